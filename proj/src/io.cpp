#include "hsn/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hsn {

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

void dump_rec(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<size_t>(depth), ' ');
  const std::string pad1(2 * static_cast<size_t>(depth + 1), ' ');
  switch (j.kind) {
    case Json::Kind::null_v: out += "null"; break;
    case Json::Kind::bool_v: out += j.b ? "true" : "false"; break;
    case Json::Kind::int_v: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld", j.i);
      out += buf;
      break;
    }
    case Json::Kind::num_v: out += format_double(j.num); break;
    case Json::Kind::str_v:
      out += '"';
      out += json_escape(j.str);
      out += '"';
      break;
    case Json::Kind::arr_v:
      if (j.arr.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (size_t k = 0; k < j.arr.size(); ++k) {
        out += pad1;
        dump_rec(j.arr[k], out, depth + 1);
        if (k + 1 < j.arr.size()) out += ',';
        out += '\n';
      }
      out += pad;
      out += ']';
      break;
    case Json::Kind::obj_v:
      if (j.obj.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      {
        size_t k = 0;
        for (const auto& [key, val] : j.obj) {
          out += pad1;
          out += '"';
          out += json_escape(key);
          out += "\": ";
          dump_rec(val, out, depth + 1);
          if (++k < j.obj.size()) out += ',';
          out += '\n';
        }
      }
      out += pad;
      out += '}';
      break;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw std::runtime_error("unparseable number '" + tok + "' at " + where);
  return v;
}

double json_to_double(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::runtime_error("expected a number for key '" + key + "'");
}
}  // namespace

Json Json::boolean(bool v) {
  Json j;
  j.kind = Kind::bool_v;
  j.b = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.kind = Kind::int_v;
  j.i = v;
  return j;
}

Json Json::number(double v) {
  Json j;
  if (std::isfinite(v)) {
    j.kind = Kind::num_v;
    j.num = v;
  } else {
    j.kind = Kind::str_v;
    j.str = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  return j;
}

Json Json::string(std::string v) {
  Json j;
  j.kind = Kind::str_v;
  j.str = std::move(v);
  return j;
}

Json Json::array() {
  Json j;
  j.kind = Kind::arr_v;
  return j;
}

Json Json::object() {
  Json j;
  j.kind = Kind::obj_v;
  return j;
}

Json& Json::operator[](const std::string& key) {
  if (kind == Kind::null_v) kind = Kind::obj_v;
  if (kind != Kind::obj_v) throw std::logic_error("Json::operator[]: not an object");
  return obj[key];
}

std::string Json::dump() const {
  std::string out;
  dump_rec(*this, out, 0);
  out += '\n';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

FrequencyField read_frequency_field(const std::string& path, int expected_arity,
                                    int expected_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file, header expected");
  const std::vector<std::string> head = split_csv_line(line);

  int n = 0;
  while (n < static_cast<int>(head.size()) &&
         head[n] == "xi_" + std::to_string(n + 1))
    ++n;
  if (n == 0) throw std::runtime_error(path + ": header must start with xi_1");
  if (n >= static_cast<int>(head.size()) || head[n] != "weight")
    throw std::runtime_error(path + ": 'weight' column expected after xi columns");
  const int payload_cols = static_cast<int>(head.size()) - n - 1;
  if (payload_cols <= 0 || payload_cols % 2 != 0)
    throw std::runtime_error(path + ": payload columns must come in re/im pairs");
  const int arity = payload_cols / 2;

  // Payload headers: <prefix>k_re, <prefix>k_im with one consistent prefix.
  const std::string& first = head[n + 1];
  if (first.size() < 4 || first.substr(first.size() - 4) != "0_re")
    throw std::runtime_error(path + ": first payload column must be named <prefix>0_re");
  const std::string prefix = first.substr(0, first.size() - 4);
  for (int k = 0; k < arity; ++k) {
    const std::string stem = prefix + std::to_string(k);
    if (head[n + 1 + 2 * k] != stem + "_re" || head[n + 2 + 2 * k] != stem + "_im")
      throw std::runtime_error(path + ": payload column " + std::to_string(k) +
                               " must be " + stem + "_re," + stem + "_im");
  }

  if (expected_n >= 0 && n != expected_n)
    throw std::runtime_error(path + ": expected " + std::to_string(expected_n) +
                             " frequency columns, found " + std::to_string(n));
  if (expected_arity >= 0 && arity != expected_arity)
    throw std::runtime_error(path + ": expected payload arity " +
                             std::to_string(expected_arity) + ", found " +
                             std::to_string(arity));

  FrequencyField field;
  field.n = n;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> tok = split_csv_line(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (static_cast<int>(tok.size()) != static_cast<int>(head.size()))
      throw std::runtime_error(where + ": expected " + std::to_string(head.size()) +
                               " fields, found " + std::to_string(tok.size()));
    FrequencySample s;
    s.xi.resize(n);
    for (int k = 0; k < n; ++k) s.xi[k] = parse_double(tok[k], where);
    s.weight = parse_double(tok[n], where);
    if (!s.xi.allFinite() || !std::isfinite(s.weight))
      throw std::runtime_error(where + ": non-finite frequency or weight");
    if (s.xi.norm() == 0.0) throw std::runtime_error(where + ": zero frequency rejected");
    Eigen::VectorXcd p(arity);
    for (int k = 0; k < arity; ++k) {
      const double re = parse_double(tok[n + 1 + 2 * k], where);
      const double im = parse_double(tok[n + 2 + 2 * k], where);
      if (!std::isfinite(re) || !std::isfinite(im))
        throw std::runtime_error(where + ": non-finite payload rejected");
      p[k] = cplx(re, im);
    }
    field.samples.push_back(std::move(s));
    field.payload.push_back(std::move(p));
  }
  if (field.samples.empty()) throw std::runtime_error(path + ": no data rows");
  return field;
}

void write_frequency_field(const std::string& path, const FrequencyField& field,
                           const std::string& payload_prefix) {
  const int arity = field.payload.empty() ? 0 : static_cast<int>(field.payload[0].size());
  std::string out;
  for (int k = 0; k < field.n; ++k) out += "xi_" + std::to_string(k + 1) + ",";
  out += "weight";
  for (int k = 0; k < arity; ++k) {
    const std::string stem = payload_prefix + std::to_string(k);
    out += "," + stem + "_re," + stem + "_im";
  }
  out += '\n';
  for (int i = 0; i < field.size(); ++i) {
    for (int k = 0; k < field.n; ++k) out += format_double(field.samples[i].xi[k]) + ",";
    out += format_double(field.samples[i].weight);
    for (int k = 0; k < arity; ++k) {
      out += "," + format_double(field.payload[i][k].real());
      out += "," + format_double(field.payload[i][k].imag());
    }
    out += '\n';
  }
  write_text(path, out);
}

CoefTensor read_tensor(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": JSON parse error: " + e.what());
  }
  if (!doc.contains("n") || !doc.contains("m") || !doc.contains("real") ||
      !doc.contains("imag"))
    throw std::runtime_error(path + ": tensor JSON needs keys n, m, real, imag");
  const int n = doc["n"].get<int>();
  const int m = doc["m"].get<int>();
  if (n < 1 || m < 1) throw std::runtime_error(path + ": n and m must be >= 1");
  CoefTensor t = make_special_operator(n, m);
  const int side = t.side();
  const auto& re = doc["real"];
  const auto& im = doc["imag"];
  if (static_cast<int>(re.size()) != side || static_cast<int>(im.size()) != side)
    throw std::runtime_error(path + ": matrix must be " + std::to_string(side) + " x " +
                             std::to_string(side));
  for (int i = 0; i < side; ++i) {
    if (static_cast<int>(re[i].size()) != side || static_cast<int>(im[i].size()) != side)
      throw std::runtime_error(path + ": matrix must be square, row " + std::to_string(i));
    for (int j = 0; j < side; ++j)
      t.A(i, j) = cplx(json_to_double(re[i][j], "real"), json_to_double(im[i][j], "imag"));
  }
  return t;
}

void write_tensor(const std::string& path, const CoefTensor& t) {
  Json doc = Json::object();
  doc["n"] = Json::integer(t.n);
  doc["m"] = Json::integer(t.m);
  Json idx = Json::array();
  for (int i = 0; i < t.side(); ++i) {
    Json mi = Json::array();
    for (int v : t.mis[i]) mi.arr.push_back(Json::integer(v));
    idx.arr.push_back(std::move(mi));
  }
  doc["indices"] = std::move(idx);
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < t.side(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (int j = 0; j < t.side(); ++j) {
      rrow.arr.push_back(Json::number(t.A(i, j).real()));
      irow.arr.push_back(Json::number(t.A(i, j).imag()));
    }
    re.arr.push_back(std::move(rrow));
    im.arr.push_back(std::move(irow));
  }
  doc["real"] = std::move(re);
  doc["imag"] = std::move(im);
  write_text(path, doc.dump());
}

Json norm_report_json(const NormReport& rep) {
  Json j = Json::object();
  j["square_function"] = Json::number(rep.square_function);
  j["square_function_rough"] = Json::number(rep.square_function_rough);
  j["sup_L2"] = Json::number(rep.sup_L2);
  j["whitney_L2"] = Json::number(rep.whitney_L2);
  j["whitney_W1"] = Json::number(rep.whitney_W1);
  j["besov_half"] = Json::number(rep.besov_half);
  j["neumann_L2_weighted"] = Json::number(rep.neumann_L2_weighted);
  j["neumann_Wminus1_weighted"] = Json::number(rep.neumann_Wminus1_weighted);
  return j;
}

NormReport read_norm_report(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": JSON parse error: " + e.what());
  }
  NormReport rep;
  auto get = [&](const char* key) {
    if (!doc.contains(key)) throw std::runtime_error(path + ": missing key " + key);
    return json_to_double(doc[key], key);
  };
  rep.square_function = get("square_function");
  rep.square_function_rough = get("square_function_rough");
  rep.sup_L2 = get("sup_L2");
  rep.whitney_L2 = get("whitney_L2");
  rep.whitney_W1 = get("whitney_W1");
  rep.besov_half = get("besov_half");
  rep.neumann_L2_weighted = get("neumann_L2_weighted");
  rep.neumann_Wminus1_weighted = get("neumann_Wminus1_weighted");
  return rep;
}

Json sweep_report_json(const SweepReport& rep) {
  Json j = Json::object();
  auto vec = [](const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.arr.push_back(Json::number(x));
    return a;
  };
  j["values"] = vec(rep.values);
  j["sigma_ratio"] = vec(rep.sigma_ratio);
  j["lambda_slice"] = vec(rep.lambda_slice);
  j["zeros"] = vec(rep.zeros);
  return j;
}

void write_sweep_csv(const std::string& path, const SweepReport& rep) {
  std::string out = "value,sigma_ratio,lambda_slice\n";
  for (size_t i = 0; i < rep.values.size(); ++i) {
    out += format_double(rep.values[i]) + "," + format_double(rep.sigma_ratio[i]) + "," +
           format_double(rep.lambda_slice[i]) + '\n';
  }
  write_text(path, out);
}

Json make_manifest(const Json& resolved_config,
                   const std::vector<std::pair<std::string, std::string>>& input_hashes) {
  Json j = Json::object();
  j["config"] = resolved_config;
  Json inputs = Json::object();
  for (const auto& [p, h] : input_hashes) inputs[p] = Json::string(h);
  j["inputs"] = std::move(inputs);
  j["versions"] = Json::object();
  j["versions"]["artifact"] = Json::string("0.1.0");
  j["versions"]["eigen"] = Json::string(std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION));
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm tmv{};
  gmtime_r(&now, &tmv);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tmv);
  j["generated_at"] = Json::string(stamp);
  return j;
}

}  // namespace hsn
