#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace khova::cli;

  CLI::App app{"khova: exact initial ideals, valuations and Khovanskii bases"};
  std::string command, job_path, out_path;
  Overrides ov;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("job", job_path, "Job file")->required();
  app.add_option("--cap-pairs", ov.cap_pairs, "Maximum S-pairs reduced per basis");
  app.add_option("--cap-degree", ov.cap_degree, "Maximum S-pair lcm degree");
  app.add_option("--cap-subduction", ov.cap_subduction, "Maximum subduction steps");
  app.add_option("--seed", ov.seed, "Random seed (overrides the job and KHOVA_SEED)");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_flag("--parallel", ov.parallel, "Use the parallel Buchberger strategy");
  app.add_flag("--timing", ov.timing, "Add wall-clock timing to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (const char* env = std::getenv("KHOVA_SEED")) {
    try {
      ov.env_seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "khova: KHOVA_SEED is not an unsigned integer\n";
      return kParse;
    }
  }

  std::ifstream in(job_path, std::ios::binary);
  if (!in) {
    std::cerr << "khova: cannot read " << job_path << "\n";
    return kPrecondition;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  auto result = run(command, buf.str(), ov);
  std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "khova: cannot write " << out_path << "\n";
      return kPrecondition;
    }
    out << text;
  }
  if (result.report.contains("error")) std::cerr << "khova: " << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
