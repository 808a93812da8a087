#include "swerect/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "swerect/error.hpp"

namespace swerect {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, std::size_t line_no) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (true) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": invalid number");
    }
    out.push_back(v);
    p = ptr;
    if (p == end) break;
    if (*p != ',') throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected ','");
    ++p;
  }
  if (out.size() != expected) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                           std::to_string(expected) + " columns");
  }
  return out;
}

}  // namespace

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string format_field_csv(const StateField& state, int precision) {
  const Grid& g = state.grid();
  std::string out = "x,y,u,v,phi\n";
  out.reserve(g.size() * 5 * (precision + 8));
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const Vec3& v = state(i, j);
      out += format_number(g.x(i), precision);
      out += ',';
      out += format_number(g.y(j), precision);
      for (int c = 0; c < 3; ++c) {
        out += ',';
        out += format_number(v(c), precision);
      }
      out += '\n';
    }
  }
  return out;
}

void write_field_csv(const StateField& state, const std::filesystem::path& path, int precision) {
  write_text(path, format_field_csv(state, precision));
}

StateField parse_field_csv(const std::string& text) {
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty() || lines[0] != "x,y,u,v,phi") {
    throw Error(ErrorKind::ParseError, "field CSV must start with header 'x,y,u,v,phi'");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    rows.push_back(parse_row(lines[k], 5, k + 1));
  }
  if (rows.empty()) throw Error(ErrorKind::ParseError, "field CSV has no data rows");
  std::size_t ny = 0;
  while (ny < rows.size() && rows[ny][0] == rows[0][0]) ++ny;
  if (rows.size() % ny != 0) throw Error(ErrorKind::ShapeMismatch, "field CSV rows do not form a grid");
  const std::size_t nx = rows.size() / ny;
  if (nx < 2 || ny < 2 || !(rows.back()[0] > 0.0) || !(rows.back()[1] > 0.0)) {
    throw Error(ErrorKind::ShapeMismatch, "field CSV needs at least 2 nodes per direction");
  }
  const Grid grid{rows.back()[0], rows.back()[1], nx, ny};
  StateField s(grid);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const auto& r = rows[i * ny + j];
      if (r[0] != rows[i * ny][0] || r[1] != rows[j][1]) {
        throw Error(ErrorKind::ShapeMismatch, "field CSV is not in x-major order");
      }
      s(i, j) = Vec3(r[2], r[3], r[4]);
    }
  }
  return s;
}

StateField read_field_csv(const std::filesystem::path& path) { return parse_field_csv(read_text(path)); }

std::string format_energy_csv(const EnergyLog& log, int precision) {
  std::string out = "t,energy\n";
  for (const EnergyEntry& e : log.entries()) {
    out += format_number(e.t, precision);
    out += ',';
    out += format_number(e.energy, precision);
    out += '\n';
  }
  return out;
}

void write_energy_csv(const EnergyLog& log, const std::filesystem::path& path, int precision) {
  write_text(path, format_energy_csv(log, precision));
}

EnergyLog read_energy_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = lines_of(read_text(path));
  if (lines.empty() || lines[0] != "t,energy") {
    throw Error(ErrorKind::ParseError, "energy CSV must start with header 't,energy'");
  }
  EnergyLog log;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto r = parse_row(lines[k], 2, k + 1);
    log.append(r[0], r[1]);
  }
  return log;
}

void write_theta_csv(const ThetaField& theta, const std::filesystem::path& path, int precision) {
  const Grid& g = theta.grid();
  std::string out = "x,y,theta1,theta2\n";
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      out += format_number(g.x(i), precision) + ',' + format_number(g.y(j), precision) + ',' +
             format_number(theta.theta1(i, j), precision) + ',' + format_number(theta.theta2(i, j), precision) +
             '\n';
    }
  }
  write_text(path, out);
}

}  // namespace swerect
