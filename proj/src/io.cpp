#include "sigtree/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sigtree/errors.hpp"

namespace sigtree::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

PolyPath read_path_csv(std::istream& in, bool leading_time) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool header_seen = false;
  bool has_time = leading_time;
  std::vector<double> coords;
  std::vector<double> times;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const std::vector<std::string> fields = split_fields(line);
    if (columns == 0) {
      columns = fields.size();
      double probe;
      const bool numeric = std::all_of(fields.begin(), fields.end(),
                                       [&](const std::string& f) { return parse_double(f, probe); });
      if (!numeric) {
        header_seen = true;
        const std::string first = lower(fields[0]);
        has_time = first == "t" || first == "time";
        continue;
      }
    }
    if (fields.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " fields, found " +
                       std::to_string(fields.size()),
                       line_no, std::min(fields.size(), columns) + 1);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v;
      if (!parse_double(fields[c], v)) {
        throw ParseError("not a finite number: '" + fields[c] + "'", line_no, c + 1);
      }
      if (has_time && c == 0) {
        times.push_back(v);
      } else {
        coords.push_back(v);
      }
    }
  }
  const std::size_t dim = has_time ? columns - 1 : columns;
  if (columns == 0 || dim == 0) throw ParseError("no coordinate columns", line_no, 1);
  if (coords.empty()) throw ParseError(header_seen ? "header without vertices" : "empty path", line_no, 1);
  std::optional<std::vector<double>> t;
  if (has_time) t = std::move(times);
  return PolyPath(dim, std::move(coords), std::move(t));
}

PolyPath read_path_csv_file(const std::string& filename, bool leading_time) {
  std::ifstream in(filename);
  if (!in) throw ValidationError("cannot open '" + filename + "'");
  try {
    return read_path_csv(in, leading_time);
  } catch (const ParseError& e) {
    throw ParseError(filename + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" (line")),
                     e.line(), e.column());
  }
}

void write_path_csv(std::ostream& out, const PolyPath& x) {
  const bool timed = x.times().has_value();
  if (timed) out << "t,";
  for (std::size_t i = 0; i < x.dim(); ++i) out << (i ? "," : "") << "x" << (i + 1);
  out << '\n';
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (timed) out << format_double(x.time(k)) << ',';
    for (std::size_t i = 0; i < x.dim(); ++i) out << (i ? "," : "") << format_double(x.vertex(k)[i]);
    out << '\n';
  }
}

std::string dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

json parse_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ValidationError("cannot open '" + filename + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json to_json(const TensorSeries& s) {
  json levels = json::array();
  for (const auto& level : s.levels()) {
    json l = json::array();
    for (double c : level) l.push_back(c);
    levels.push_back(std::move(l));
  }
  return json{{"dim", s.dim()}, {"depth", s.depth()}, {"levels", std::move(levels)}};
}

TensorSeries tensor_from_json(const json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    const int depth = j.at("depth").get<int>();
    std::vector<std::vector<double>> levels;
    for (const auto& l : j.at("levels")) levels.push_back(l.get<std::vector<double>>());
    return TensorSeries(dim, depth, std::move(levels));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("tensor JSON: ") + e.what());
  }
}

json lift_to_json(const TensorSeries& lifted, const GradedSpace& space) {
  json blocks = json::object();
  for (const auto& [key, values] : lift_blocks(lifted, space)) blocks[key] = values;
  return json{{"base_dim", space.base_dim()},
              {"truncation", space.truncation()},
              {"level", lifted.depth()},
              {"blocks", std::move(blocks)}};
}

Polynomial1Form form_from_json(const json& j, int dim) {
  try {
    const json& terms = j.is_array() ? j : j.at("terms");
    if (!terms.is_array()) throw ValidationError("form JSON: 'terms' must be an array");
    std::vector<FormTerm> out;
    for (const auto& t : terms) {
      FormTerm term;
      term.alpha = t.at("alpha").get<std::vector<int>>();
      term.letter = t.at("letter").get<int>();
      term.coef = t.at("coef").get<double>();
      out.push_back(std::move(term));
    }
    return Polynomial1Form(dim, std::move(out));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("form JSON: ") + e.what());
  }
}

json path_to_json(const PolyPath& x) {
  json vertices = json::array();
  for (std::size_t k = 0; k < x.size(); ++k)
    vertices.push_back(std::vector<double>(x.vertex(k).begin(), x.vertex(k).end()));
  return vertices;
}

}  // namespace sigtree::io
