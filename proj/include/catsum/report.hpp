#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catsum/modarith.hpp"

namespace catsum {

/// One verification row: a predicted residue against the recurrence route and
/// the enumeration route. Match flags exist only when both sides were
/// computed; inapplicable rows carry no values at all.
struct CongruenceRecord {
  std::string theorem;
  u64 p = 0;
  unsigned a = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::string target;
  std::optional<std::string> predicted, fast, oracle;
  std::optional<bool> match_pf, match_po;
  bool applicable = false;
  std::string reason;
  double ms_predict = 0, ms_fast = 0, ms_oracle = 0;
};

enum class OutFormat { jsonl, csv };

std::optional<OutFormat> parse_format(const std::string& s);

void write_record(std::ostream& os, const CongruenceRecord& rec, OutFormat format);
void write_header(std::ostream& os, OutFormat format);  // csv header; no-op for jsonl

}  // namespace catsum
