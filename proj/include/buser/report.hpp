#pragma once

#include <string>
#include <vector>

#include "buser/bounds.hpp"
#include "buser/heat.hpp"

// Frozen output schemas.
//   records: inequality_id,worst_slack,tolerance,pass,N,dx,dt,notes
//   bounds:  regime,K,input_kind,input,cheeger_lower,implicit,argmax_t,
//            explicit,explicit_regime,c
// CSV uses RFC-4180 quoting; JSON is an array of objects with the same
// keys in schema order. argmax_t = +infinity serializes as "inf".

namespace buser {

enum class OutputFormat { csv, json };

// A generic row: ordered (key, value) cells where every value is
// already rendered to text, plus a per-cell "numeric" flag for JSON.
struct Cell {
  std::string key;
  std::string value;
  bool numeric = false;
  bool boolean = false;
};
using Row = std::vector<Cell>;

std::string format_number(double v);  // %.12g, "inf" for infinities

Row to_row(const VerificationRecord& r);
Row to_row(const BoundReport& r);

std::string emit_csv(const std::vector<Row>& rows, const std::vector<std::string>& header);
std::string emit_json(const std::vector<Row>& rows);

std::vector<std::string> record_header();
std::vector<std::string> bound_header();

// Renders rows in the requested format; for CSV an explicit header is
// required even when rows is empty (header-only output).
std::string render(const std::vector<Row>& rows, const std::vector<std::string>& header,
                   OutputFormat format);

}  // namespace buser
