#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "smoothed2opt/instances.hpp"

namespace smoothed2opt {

namespace {

using nlohmann::json;

// 17 significant digits round-trip any IEEE double exactly.
std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_coord_array(std::ostream& out, const std::vector<double>& coords) {
  out << "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ",";
    out << fmt_double(coords[i]);
  }
  out << "]";
}

void write_native(const PointSet& ps, std::ostream& out) {
  out << "{\n";
  out << "  \"schema\": 1,\n";
  out << "  \"n\": " << ps.n << ",\n";
  out << "  \"d\": " << ps.d << ",\n";
  out << "  \"coords\": ";
  write_coord_array(out, ps.coords);
  if (ps.provenance) {
    const Provenance& prov = *ps.provenance;
    out << ",\n  \"provenance\": {\n";
    out << "    \"kind\": \"" << to_string(prov.layout.kind) << "\",\n";
    out << "    \"layout_coords\": ";
    write_coord_array(out, prov.layout.coords);
    out << ",\n";
    out << "    \"sigma\": " << fmt_double(prov.spec.sigma) << ",\n";
    out << "    \"seed\": " << prov.spec.seed << "\n";
    out << "  }";
  }
  out << "\n}\n";
}

std::vector<double> read_coord_array(const json& node, const char* key,
                                     std::size_t expect) {
  if (!node.contains(key) || !node[key].is_array())
    throw ParseError(std::string("missing or non-array \"") + key + "\"");
  std::vector<double> coords;
  coords.reserve(node[key].size());
  for (const json& v : node[key]) {
    if (!v.is_number()) throw ParseError("non-numeric coordinate");
    coords.push_back(v.get<double>());
  }
  if (coords.size() != expect)
    throw ParseError(std::string("\"") + key + "\" holds " +
                     std::to_string(coords.size()) + " values, expected " +
                     std::to_string(expect));
  return coords;
}

PointSet read_native(std::istream& in, const std::string& path) {
  json root;
  try {
    root = json::parse(in);  // exceptions carry line and column
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(path + ": top level is not an object");
  if (!root.contains("n") || !root.contains("d"))
    throw ParseError(path + ": missing \"n\" or \"d\"");

  PointSet ps;
  ps.n = root["n"].get<int>();
  ps.d = root["d"].get<int>();
  if (ps.n < 4) throw ParseError(path + ": n must be >= 4");
  if (ps.d < 2) throw ParseError(path + ": d must be >= 2");
  ps.coords = read_coord_array(root, "coords",
                               static_cast<std::size_t>(ps.n) * ps.d);

  if (root.contains("provenance")) {
    const json& prov = root["provenance"];
    Provenance out;
    out.layout.n = ps.n;
    out.layout.d = ps.d;
    out.layout.kind = layout_kind_from_string(prov.at("kind").get<std::string>());
    out.layout.coords = read_coord_array(
        prov, "layout_coords", static_cast<std::size_t>(ps.n) * ps.d);
    out.spec.sigma = prov.at("sigma").get<double>();
    out.spec.seed = prov.at("seed").get<std::uint64_t>();
    validate_layout(out.layout);
    if (!(out.spec.sigma > 0.0 && out.spec.sigma <= 1.0))
      throw ParseError(path + ": provenance sigma outside (0, 1]");
    ps.provenance = std::move(out);
  }
  return ps;
}

void write_tsplib(const PointSet& ps, std::ostream& out) {
  out << "NAME: smoothed2opt\n";
  out << "TYPE: TSP\n";
  out << "DIMENSION: " << ps.n << "\n";
  out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < ps.n; ++i) {
    out << (i + 1) << " " << fmt_double(ps.point(i)[0]) << " "
        << fmt_double(ps.point(i)[1]) << "\n";
  }
  out << "EOF\n";
}

PointSet read_tsplib(std::istream& in, const std::string& path) {
  auto fail = [&](int line_no, const std::string& what) -> ParseError {
    return ParseError(path + ": parse error at line " +
                      std::to_string(line_no) + ": " + what);
  };

  int n = -1;
  bool in_coords = false;
  int line_no = 0;
  std::vector<double> coords;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    // Trim trailing CR and surrounding blanks.
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line == "EOF") break;

    if (!in_coords) {
      std::size_t colon = line.find(':');
      std::string key =
          colon == std::string::npos ? line : line.substr(0, colon);
      while (!key.empty() && key.back() == ' ') key.pop_back();
      std::string value;
      if (colon != std::string::npos) {
        value = line.substr(colon + 1);
        std::size_t vs = value.find_first_not_of(' ');
        value = vs == std::string::npos ? "" : value.substr(vs);
      }
      if (key == "NODE_COORD_SECTION") {
        in_coords = true;
      } else if (key == "DIMENSION") {
        try {
          n = std::stoi(value);
        } catch (const std::exception&) {
          throw fail(line_no, "DIMENSION is not an integer");
        }
      } else if (key == "EDGE_WEIGHT_TYPE") {
        if (value != "EUC_2D")
          throw UnsupportedFormatError(path + ": EDGE_WEIGHT_TYPE " + value +
                                       " is not supported, only EUC_2D");
      }
      // NAME, TYPE, COMMENT and unknown header keys are ignored.
    } else {
      std::istringstream fields(line);
      long index;
      double x, y;
      if (!(fields >> index >> x >> y))
        throw fail(line_no, "expected \"index x y\"");
      std::string extra;
      if (fields >> extra)
        throw fail(line_no, "trailing token \"" + extra + "\"");
      coords.push_back(x);
      coords.push_back(y);
    }
  }

  if (n < 0) throw ParseError(path + ": missing DIMENSION");
  if (!in_coords) throw ParseError(path + ": missing NODE_COORD_SECTION");
  if (coords.size() != static_cast<std::size_t>(n) * 2)
    throw ParseError(path + ": DIMENSION " + std::to_string(n) + " but " +
                     std::to_string(coords.size() / 2) + " coordinate lines");
  if (n < 4) throw ParseError(path + ": n must be >= 4");

  PointSet ps;
  ps.n = n;
  ps.d = 2;
  ps.coords = std::move(coords);
  return ps;
}

}  // namespace

void save_instance(const PointSet& ps, const std::string& path,
                   FileFormat format) {
  if (format == FileFormat::tsplib_euc2d && ps.d != 2)
    throw std::invalid_argument("tsplib output requires d = 2");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (format == FileFormat::native_json) {
    write_native(ps, out);
  } else {
    write_tsplib(ps, out);
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

PointSet load_instance(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return format == FileFormat::native_json ? read_native(in, path)
                                           : read_tsplib(in, path);
}

}  // namespace smoothed2opt
