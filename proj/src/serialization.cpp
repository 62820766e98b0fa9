#include "diamond/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "diamond/errors.hpp"

namespace diamond {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Parse, "malformed JSON");
  return j;
}

std::vector<std::int64_t> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(ErrorCode::Parse, std::string("expected array field '") + key + "'");
  std::vector<std::int64_t> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) fail(ErrorCode::Parse, std::string("non-integer entry in '") + key + "'");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ParameterSequences params_from(const json& j) {
  if (j.contains("j_const") || j.contains("n_const") || j.contains("depth")) {
    for (const char* key : {"j_const", "n_const", "depth"})
      if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::Parse, std::string("expected integer field '") + key + "'");
    return ParameterSequences::constant(j["j_const"].get<std::int64_t>(),
                                        j["n_const"].get<std::int64_t>(),
                                        j["depth"].get<int>());
  }
  return ParameterSequences(int_list(j, "j"), int_list(j, "n"));
}

Address address_from(const json& j) {
  Address a;
  if (j.contains("eta_num") || j.contains("eta_den")) {
    for (const char* key : {"eta_num", "eta_den"})
      if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::Parse, std::string("expected integer field '") + key + "'");
    a.eta = Angle::pi_fraction(j["eta_num"].get<std::int64_t>(),
                               j["eta_den"].get<std::int64_t>());
  } else if (j.contains("eta_real")) {
    if (!j["eta_real"].is_number()) fail(ErrorCode::Parse, "expected numeric field 'eta_real'");
    a.eta = Angle::radians(j["eta_real"].get<double>());
  } else {
    fail(ErrorCode::Parse, "address needs eta_num/eta_den or eta_real");
  }
  if (j.contains("w")) a.w = int_list(j, "w");
  return a;
}

}  // namespace

ParameterSequences params_from_json(const std::string& text) {
  return params_from(parse_json(text));
}

std::string params_to_json(const ParameterSequences& seq) {
  json j;
  j["j"] = json::array();
  j["n"] = json::array();
  for (int i = 1; i <= seq.depth(); ++i) {
    j["j"].push_back(seq.j(i));
    j["n"].push_back(seq.n(i));
  }
  return j.dump();
}

Address address_from_json(const std::string& text) {
  return address_from(parse_json(text));
}

std::string address_to_json(const Address& addr) {
  json j;
  if (addr.eta.exact()) {
    j["eta_num"] = addr.eta.num();
    j["eta_den"] = addr.eta.den();
  } else {
    j["eta_real"] = addr.eta.value();
  }
  j["w"] = addr.w;
  return j.dump();
}

std::string cell_label(const CellWord& cell) {
  std::string out = std::to_string(static_cast<unsigned long long>(cell.arc));
  for (std::int64_t v : cell.w) out += "." + std::to_string(v);
  return out;
}

CellWord cell_from_label(const ParameterSequences& seq, int level,
                         const std::string& label) {
  CellWord cell;
  cell.level = level;
  std::stringstream ss(label);
  std::string piece;
  bool first = true;
  while (std::getline(ss, piece, '.')) {
    try {
      if (first)
        cell.arc = static_cast<uint128>(std::stoull(piece));
      else
        cell.w.push_back(std::stoll(piece));
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad cell label '" + label + "'");
    }
    first = false;
  }
  if (first) fail(ErrorCode::Parse, "empty cell label");
  if (static_cast<int>(cell.w.size()) != level)
    fail(ErrorCode::Parse, "cell label '" + label + "' has the wrong number of branch labels");
  try {
    cell_index(seq, cell);
  } catch (const Error&) {
    fail(ErrorCode::Parse, "cell label '" + label + "' outside the configured family");
  }
  return cell;
}

void write_csv(const GridField& field, std::ostream& out) {
  json meta;
  meta["schema"] = "diamond-grid-v1";
  meta["j"] = json::array();
  meta["n"] = json::array();
  for (int i = 1; i <= field.seq().depth(); ++i) {
    meta["j"].push_back(field.seq().j(i));
    meta["n"].push_back(field.seq().n(i));
  }
  meta["level"] = field.level();
  meta["m"] = field.nodes_per_cell();
  out << "# " << meta.dump() << "\n";
  out << "cell,node,theta,value\n";
  for (std::size_t c = 0; c < field.cell_total(); ++c) {
    std::string label = cell_label(field.cells()[c]);
    for (int r = 0; r < field.nodes_per_cell(); ++r)
      out << label << "," << r << "," << format_double(field.node_theta(r))
          << "," << format_double(field.at(c, r)) << "\n";
  }
}

GridField read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    fail(ErrorCode::Parse, "missing metadata header line");
  json meta = parse_json(line.substr(2));
  if (!meta.contains("schema") || meta["schema"] != "diamond-grid-v1")
    fail(ErrorCode::Parse, "unknown grid schema");
  ParameterSequences seq(int_list(meta, "j"), int_list(meta, "n"));
  if (!meta.contains("level") || !meta["level"].is_number_integer() ||
      !meta.contains("m") || !meta["m"].is_number_integer())
    fail(ErrorCode::Parse, "metadata needs integer level and m");
  int level = meta["level"].get<int>();
  int m = meta["m"].get<int>();
  GridField field(seq, level, m);
  do {
    if (!std::getline(in, line)) fail(ErrorCode::Parse, "missing column header");
  } while (line.rfind("# ", 0) == 0);
  if (line != "cell,node,theta,value")
    fail(ErrorCode::Parse, "missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell_str, node_str, theta_str, value_str;
    if (!std::getline(ss, cell_str, ',') || !std::getline(ss, node_str, ',') ||
        !std::getline(ss, theta_str, ',') || !std::getline(ss, value_str))
      fail(ErrorCode::Parse, "short row '" + line + "'");
    CellWord cell = cell_from_label(seq, level, cell_str);
    int r;
    double value;
    try {
      r = std::stoi(node_str);
      value = std::stod(value_str);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad row '" + line + "'");
    }
    if (r < 0 || r >= m) fail(ErrorCode::Parse, "node index out of range in '" + line + "'");
    field.at(cell_index(seq, cell), r) = value;
  }
  return field;
}

}  // namespace diamond
