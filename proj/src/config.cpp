#include "swerect/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "swerect/csv.hpp"
#include "swerect/fields.hpp"
#include "swerect/rng.hpp"

namespace swerect {

ConfigParseError::ConfigParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct RawValue {
  std::string text;
  std::size_t line, column;
};

using RawDocument = std::map<std::string, std::map<std::string, RawValue>>;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

RawDocument tokenize(std::string_view text) {
  RawDocument doc;
  std::string section;
  std::set<std::string> seen_sections;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t b = 0;
    while (b < line.size() && is_space(line[b])) ++b;
    std::size_t e = line.find('#');
    if (e == std::string_view::npos) e = line.size();
    while (e > b && is_space(line[e - 1])) --e;
    if (b >= e) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view body = line.substr(b, e - b);
    const std::size_t col = b + 1;

    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigParseError(line_no, col + body.size() - 1, "expected ']'");
      const std::string name(body.substr(1, body.size() - 2));
      if (name.empty()) throw ConfigParseError(line_no, col + 1, "empty section name");
      for (std::size_t k = 0; k < name.size(); ++k) {
        if (!is_name_char(name[k])) throw ConfigParseError(line_no, col + 1 + k, "invalid character in section name");
      }
      if (!seen_sections.insert(name).second) {
        throw ConfigParseError(line_no, col, "section [" + name + "] appears twice");
      }
      section = name;
      doc[section];
    } else {
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) throw ConfigParseError(line_no, col, "expected 'key = value'");
      std::size_t ke = eq;
      while (ke > 0 && is_space(body[ke - 1])) --ke;
      const std::string key(body.substr(0, ke));
      if (key.empty()) throw ConfigParseError(line_no, col, "missing key before '='");
      for (std::size_t k = 0; k < key.size(); ++k) {
        if (!is_name_char(key[k])) throw ConfigParseError(line_no, col + k, "invalid character in key");
      }
      if (section.empty()) throw ConfigParseError(line_no, col, "key '" + key + "' outside of any section");
      std::size_t vb = eq + 1;
      while (vb < body.size() && is_space(body[vb])) ++vb;
      if (vb >= body.size()) throw ConfigParseError(line_no, col + eq + 1, "missing value for '" + key + "'");
      RawValue v{std::string(body.substr(vb)), line_no, col + vb};
      if (!doc[section].emplace(key, v).second) {
        throw ConfigParseError(line_no, col, "duplicate key '" + section + "." + key + "'");
      }
    }
    if (end == text.size()) break;
  }
  return doc;
}

class Reader {
 public:
  explicit Reader(RawDocument doc) : doc_(std::move(doc)) {}

  const RawValue* find(const std::string& section, const std::string& key) {
    consumed_.insert(section + "." + key);
    auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const RawValue& require(const std::string& section, const std::string& key) {
    const RawValue* v = find(section, key);
    if (!v) throw Error(ErrorKind::MissingKey, section + "." + key);
    return *v;
  }

  double number(const RawValue& v, const std::string& name) {
    double out = 0.0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
      throw Error(ErrorKind::InvalidValue, name + " = '" + v.text + "' is not a finite decimal (line " +
                                               std::to_string(v.line) + ")");
    }
    return out;
  }

  std::uint64_t integer(const RawValue& v, const std::string& name) {
    std::uint64_t out = 0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorKind::InvalidValue, name + " = '" + v.text + "' is not a non-negative integer (line " +
                                               std::to_string(v.line) + ")");
    }
    return out;
  }

  void get(const std::string& s, const std::string& k, double& out, bool required) {
    const RawValue* v = required ? &require(s, k) : find(s, k);
    if (v) out = number(*v, s + "." + k);
  }

  template <class Int>
  void get_int(const std::string& s, const std::string& k, Int& out, bool required) {
    const RawValue* v = required ? &require(s, k) : find(s, k);
    if (v) out = static_cast<Int>(integer(*v, s + "." + k));
  }

  void get_text(const std::string& s, const std::string& k, std::string& out) {
    if (const RawValue* v = find(s, k)) out = v->text;
  }

  template <class Enum>
  void get_enum(const std::string& s, const std::string& k, Enum& out,
                const std::map<std::string, Enum>& names) {
    const RawValue* v = find(s, k);
    if (!v) return;
    auto it = names.find(v->text);
    if (it == names.end()) {
      std::string allowed;
      for (const auto& [n, _] : names) allowed += (allowed.empty() ? "" : "|") + n;
      throw Error(ErrorKind::InvalidValue, s + "." + k + " = '" + v->text + "' (expected " + allowed + ")");
    }
    out = it->second;
  }

  void reject_unknown() const {
    for (const auto& [section, keys] : doc_) {
      for (const auto& [key, v] : keys) {
        if (!consumed_.count(section + "." + key)) {
          throw Error(ErrorKind::UnknownKey, section + "." + key + " (line " + std::to_string(v.line) + ")");
        }
      }
    }
  }

  bool has_section(const std::string& s) const { return doc_.count(s) != 0; }
  const RawDocument& raw() const { return doc_; }

 private:
  RawDocument doc_;
  std::set<std::string> consumed_;
};

const std::set<std::string> kSections = {"physics", "grid", "run", "initial", "forcing", "boundary", "output"};

StateField read_reference(const ConfigDocument& doc, const std::string& file, const Grid& grid,
                          const char* what) {
  if (file.empty()) throw Error(ErrorKind::MissingKey, std::string(what) + ".file");
  const StateField s = read_field_csv(doc.base_dir / file);
  if (s.grid().nx != grid.nx || s.grid().ny != grid.ny) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ".file does not match the configured grid");
  }
  StateField out(grid);
  out.values() = s.values();
  return out;
}

}  // namespace

ConfigDocument parse_config(std::string_view text) {
  Reader r(tokenize(text));
  for (const auto& [section, _] : r.raw()) {
    if (!kSections.count(section)) throw Error(ErrorKind::UnknownKey, "[" + section + "]");
  }
  ConfigDocument d;
  r.get("physics", "u0", d.physics.u0, true);
  r.get("physics", "v0", d.physics.v0, true);
  r.get("physics", "phi0", d.physics.phi0, true);
  r.get("physics", "g", d.physics.g, true);
  r.get("physics", "f", d.physics.f, false);

  r.get("grid", "L1", d.grid.L1, true);
  r.get("grid", "L2", d.grid.L2, true);
  r.get_int("grid", "nx", d.grid.nx, true);
  r.get_int("grid", "ny", d.grid.ny, true);

  r.get("run", "t_end", d.run.t_end, false);
  r.get("run", "cfl", d.run.cfl, false);
  r.get_enum("run", "scheme", d.run.scheme,
             {{"ssp-rk2", TimeScheme::SspRk2}, {"forward-euler", TimeScheme::ForwardEuler}});
  r.get_int("run", "seed", d.run.seed, false);

  r.get_enum("initial", "kind", d.initial.kind,
             {{"random", InitialKind::Random},
              {"zero", InitialKind::Zero},
              {"bump", InitialKind::Bump},
              {"manufactured", InitialKind::Manufactured},
              {"file", InitialKind::File}});
  r.get_text("initial", "file", d.initial.file);
  r.get_int("initial", "modes", d.initial.modes, false);

  r.get_enum("forcing", "kind", d.forcing.kind,
             {{"none", ForcingKind::None}, {"manufactured", ForcingKind::Manufactured}, {"file", ForcingKind::File}});
  r.get_text("forcing", "file", d.forcing.file);

  r.get_enum("boundary", "kind", d.boundary.kind,
             {{"homogeneous", BoundaryKind::Homogeneous},
              {"manufactured", BoundaryKind::Manufactured},
              {"file", BoundaryKind::File}});
  r.get_text("boundary", "file", d.boundary.file);

  r.get_text("output", "dir", d.output.dir);
  r.get_int("output", "cadence", d.output.cadence, false);
  r.get_int("output", "precision", d.output.precision, false);

  r.reject_unknown();

  if (d.grid.nx < 4 || d.grid.ny < 4) throw Error(ErrorKind::InvalidValue, "grid.nx and grid.ny must be >= 4");
  if (!(d.grid.L1 > 0.0) || !(d.grid.L2 > 0.0)) throw Error(ErrorKind::InvalidValue, "grid.L1 and grid.L2 must be positive");
  if (!(d.run.t_end > 0.0)) throw Error(ErrorKind::InvalidValue, "run.t_end must be positive");
  if (!(d.run.cfl > 0.0 && d.run.cfl <= 0.9)) throw Error(ErrorKind::InvalidValue, "run.cfl must lie in (0, 0.9]");
  if (d.output.precision < 1 || d.output.precision > 17) {
    throw Error(ErrorKind::InvalidValue, "output.precision must lie in [1, 17]");
  }
  if (d.output.dir.empty()) throw Error(ErrorKind::InvalidValue, "output.dir must not be empty");
  (void)constants_of(d);
  return d;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  ConfigDocument d = parse_config(ss.str());
  d.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return d;
}

PhysicalConstants constants_of(const ConfigDocument& doc) {
  return validate_params(doc.physics.u0, doc.physics.v0, doc.physics.phi0, doc.physics.g, doc.physics.f);
}

Grid grid_of(const ConfigDocument& doc) {
  return Grid::make(doc.grid.L1, doc.grid.L2, doc.grid.nx, doc.grid.ny);
}

RunConfig make_run_config(const ConfigDocument& doc) {
  RunConfig cfg;
  cfg.p = constants_of(doc);
  cfg.grid = grid_of(doc);
  cfg.t_end = doc.run.t_end;
  cfg.cfl = doc.run.cfl;
  cfg.scheme = doc.run.scheme;
  cfg.snapshot_cadence = doc.output.cadence;
  const Grid grid = cfg.grid;
  const ManufacturedSolution exact = trig_packet();
  const BoundarySpec spec = bc_catalog(classify(cfg.p), cfg.p);

  switch (doc.initial.kind) {
    case InitialKind::Random: {
      SplitMix64 rng(doc.run.seed);
      const std::size_t modes = doc.initial.modes ? doc.initial.modes : default_probe_modes(grid);
      cfg.initial = band_limited_field(grid, modes, rng);
      break;
    }
    case InitialKind::Zero:
      cfg.initial = StateField(grid);
      break;
    case InitialKind::Bump: {
      const double cx = 0.3 * grid.L1, cy = 0.3 * grid.L2, r = 0.15 * std::min(grid.L1, grid.L2);
      cfg.initial = sample(grid, [=](double x, double y) -> Vec3 {
        const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
        if (d2 >= 1.0) return Vec3::Zero();
        const double w = std::pow(std::cos(0.5 * 3.14159265358979323846 * std::sqrt(d2)), 2);
        return Vec3(0.0, 0.0, w);
      });
      break;
    }
    case InitialKind::Manufactured:
      cfg.initial = sample(grid, exact.value, 0.0);
      break;
    case InitialKind::File:
      cfg.initial = read_reference(doc, doc.initial.file, grid, "initial");
      break;
  }

  switch (doc.forcing.kind) {
    case ForcingKind::None:
      break;
    case ForcingKind::Manufactured: {
      const SpaceTimeFunction F = manufactured_forcing(exact, cfg.p);
      cfg.forcing = [grid, F](double t) { return sample(grid, F, t); };
      break;
    }
    case ForcingKind::File: {
      const StateField F = read_reference(doc, doc.forcing.file, grid, "forcing");
      cfg.forcing = [F](double) { return F; };
      break;
    }
  }

  switch (doc.boundary.kind) {
    case BoundaryKind::Homogeneous:
      break;
    case BoundaryKind::Manufactured:
      cfg.boundary_data = BoundaryData::from_state(exact.value, spec);
      break;
    case BoundaryKind::File: {
      const StateField ref = read_reference(doc, doc.boundary.file, grid, "boundary");
      cfg.boundary_data = BoundaryData::from_state(
          [ref, grid](double x, double y, double) -> Vec3 {
            const auto i = static_cast<std::size_t>(std::llround(x / grid.dx()));
            const auto j = static_cast<std::size_t>(std::llround(y / grid.dy()));
            return ref(std::min(i, grid.nx - 1), std::min(j, grid.ny - 1));
          },
          spec);
      break;
    }
  }
  return cfg;
}

}  // namespace swerect
