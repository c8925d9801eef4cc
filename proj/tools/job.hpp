#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khova/groebner.hpp"
#include "khova/linear.hpp"

namespace khova::cli {

// A job file is a list of `key: value` lines. A key with nothing after the
// colon opens a section whose items are the following non-key lines. Blank
// lines and lines starting with '#' are ignored.
struct JobEntry {
  std::string key;
  std::vector<std::string> items;
  bool inline_value = false;  // written as `key: value` on one line
};

class JobFile {
 public:
  static JobFile parse(std::string_view text);

  const std::vector<JobEntry>& entries() const { return entries_; }
  bool has(std::string_view key) const { return find(key) != nullptr; }
  const JobEntry* find(std::string_view key) const;

  // Typed accessors; missing required keys raise PreconditionError, bad
  // syntax raises ParseError.
  std::string text(std::string_view key, const std::string& fallback) const;
  std::optional<std::int64_t> integer(std::string_view key) const;
  Ring ring() const;
  std::vector<Polynomial> polynomials(std::string_view key, const Ring& ring) const;
  Ideal ideal(const Ring& ring) const;
  Mat rows(std::string_view key) const;
  std::optional<Vec> vector(std::string_view key) const;
  WeightMatrix matrix() const;

 private:
  std::vector<JobEntry> entries_;
};

// Whitespace-separated rationals.
Vec parse_row(std::string_view line);

}  // namespace khova::cli
