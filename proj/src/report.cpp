#include "buser/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace buser {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

Cell num(const std::string& key, double v) { return {key, format_number(v), true, false}; }
Cell txt(const std::string& key, std::string v) { return {key, std::move(v), false, false}; }
Cell boolean(const std::string& key, bool v) {
  return {key, v ? "true" : "false", false, true};
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> record_header() {
  return {"inequality_id", "worst_slack", "tolerance", "pass", "N", "dx", "dt", "notes"};
}

std::vector<std::string> bound_header() {
  return {"regime", "K", "input_kind", "input", "cheeger_lower", "implicit",
          "argmax_t", "explicit", "explicit_regime", "c"};
}

Row to_row(const VerificationRecord& r) {
  return {txt("inequality_id", r.inequality_id),
          num("worst_slack", r.worst_slack),
          num("tolerance", r.tolerance),
          boolean("pass", r.pass),
          num("N", static_cast<double>(r.n)),
          num("dx", r.dx),
          num("dt", r.dt),
          txt("notes", r.notes)};
}

Row to_row(const BoundReport& r) {
  Row row;
  row.push_back(txt("regime", to_string(r.regime)));
  row.push_back(num("K", r.curvature));
  row.push_back(txt("input_kind", r.input_kind == BoundInput::from_h ? "from_h" : "from_lambda"));
  row.push_back(num("input", r.input_value));
  row.push_back(num("cheeger_lower", r.cheeger_lower));
  row.push_back(num("implicit", r.implicit_value));
  // CSV has no native infinity; the +inf marker is the literal "inf".
  row.push_back({"argmax_t", format_number(r.implicit_argmax_t),
                 !std::isinf(r.implicit_argmax_t), false});
  row.push_back(num("explicit", r.explicit_value));
  row.push_back(txt("explicit_regime", to_string(r.explicit_regime)));
  if (r.c_used.has_value()) {
    row.push_back(num("c", *r.c_used));
  } else {
    row.push_back(txt("c", ""));
  }
  return row;
}

std::string emit_csv(const std::vector<Row>& rows, const std::vector<std::string>& header) {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(header[i]);
  }
  out += '\n';
  for (const Row& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(row[i].value);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& row : rows) {
    nlohmann::ordered_json obj;
    for (const Cell& c : row) {
      if (c.boolean) {
        obj[c.key] = c.value == "true";
      } else if (c.numeric) {
        obj[c.key] = std::stod(c.value);
      } else {
        obj[c.key] = c.value;
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render(const std::vector<Row>& rows, const std::vector<std::string>& header,
                   OutputFormat format) {
  return format == OutputFormat::csv ? emit_csv(rows, header) : emit_json(rows);
}

}  // namespace buser
