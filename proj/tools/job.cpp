#include "job.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "khova/errors.hpp"

namespace khova::cli {

namespace {

constexpr std::array kKnownKeys{"vars",   "ideal",     "matrix", "order",    "rays",      "lineality",
                                "u",      "delta",     "bound",  "mode",     "sagbi_generators",
                                "ambient_order",       "elements", "round_cap", "sigma",   "levels",
                                "samples", "seed",     "trials", "caps",     "queries",   "strategy"};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_key_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

}  // namespace

Vec parse_row(std::string_view line) {
  Vec out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

JobFile JobFile::parse(std::string_view text) {
  JobFile job;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(pos, end - pos));
    std::size_t line_start = pos;
    pos = end + 1;
    if (line.empty() || line[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::size_t k = 0;
    while (k < line.size() && is_key_char(line[k])) ++k;
    if (k > 0 && k < line.size() && line[k] == ':') {
      std::string key = line.substr(0, k);
      if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
        throw ParseError("unknown job key '" + key + "'", line_start);
      if (job.find(key)) throw ParseError("duplicate job key '" + key + "'", line_start);
      JobEntry entry{key, {}, false};
      std::string rest = trim(line.substr(k + 1));
      if (!rest.empty()) {
        entry.items.push_back(rest);
        entry.inline_value = true;
      }
      job.entries_.push_back(std::move(entry));
    } else {
      if (job.entries_.empty() || job.entries_.back().inline_value)
        throw ParseError("line outside any section", line_start);
      job.entries_.back().items.push_back(line);
    }
    if (end == text.size()) break;
  }
  return job;
}

const JobEntry* JobFile::find(std::string_view key) const {
  for (const auto& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

std::string JobFile::text(std::string_view key, const std::string& fallback) const {
  const auto* e = find(key);
  if (!e) return fallback;
  if (e->items.size() != 1) throw ParseError("key '" + std::string(key) + "' expects one value", 0);
  return e->items[0];
}

std::optional<std::int64_t> JobFile::integer(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  auto q = parse_rational(text(key, ""));
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    throw ParseError("key '" + std::string(key) + "' expects an integer", 0);
  return q.get_num().get_si();
}

Ring JobFile::ring() const {
  const auto* e = find("vars");
  if (!e) throw PreconditionError("job has no 'vars'");
  std::vector<std::string> names;
  for (const auto& item : e->items) {
    std::istringstream in(item);
    std::string tok;
    while (in >> tok) names.push_back(tok);
  }
  return Ring(names);
}

std::vector<Polynomial> JobFile::polynomials(std::string_view key, const Ring& ring) const {
  std::vector<Polynomial> out;
  if (const auto* e = find(key))
    for (const auto& item : e->items) out.push_back(parse_polynomial(item, ring));
  return out;
}

Ideal JobFile::ideal(const Ring& ring) const { return Ideal(ring, polynomials("ideal", ring)); }

Mat JobFile::rows(std::string_view key) const {
  Mat out;
  if (const auto* e = find(key))
    for (const auto& item : e->items) out.push_back(parse_row(item));
  return out;
}

std::optional<Vec> JobFile::vector(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  Vec out;
  for (const auto& item : e->items)
    for (auto& q : parse_row(item)) out.push_back(q);
  return out;
}

WeightMatrix JobFile::matrix() const {
  auto m = rows("matrix");
  if (m.empty()) throw PreconditionError("job has no 'matrix'");
  for (const auto& r : m)
    if (r.size() != m[0].size()) throw ParseError("matrix rows have different lengths", 0);
  return WeightMatrix(m);
}

}  // namespace khova::cli
