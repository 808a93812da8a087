#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "swerect/error.hpp"
#include "swerect/evolve.hpp"
#include "swerect/grid.hpp"
#include "swerect/regime.hpp"

namespace swerect {

class ConfigParseError : public Error {
 public:
  ConfigParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

enum class InitialKind { Random, Zero, Bump, Manufactured, File };
enum class ForcingKind { None, Manufactured, File };
enum class BoundaryKind { Homogeneous, Manufactured, File };

struct ConfigDocument {
  struct Physics {
    double u0 = 0.0, v0 = 0.0, phi0 = 0.0, g = 0.0, f = 0.0;
  } physics;
  struct GridSection {
    double L1 = 0.0, L2 = 0.0;
    std::size_t nx = 0, ny = 0;
  } grid;
  struct Run {
    double t_end = 1.0;
    double cfl = 0.45;
    TimeScheme scheme = TimeScheme::SspRk2;
    std::uint64_t seed = 0;
  } run;
  struct Initial {
    InitialKind kind = InitialKind::Random;
    std::string file;
    std::size_t modes = 0;  // 0: default_probe_modes
  } initial;
  struct Forcing {
    ForcingKind kind = ForcingKind::None;
    std::string file;
  } forcing;
  struct Boundary {
    BoundaryKind kind = BoundaryKind::Homogeneous;
    std::string file;
  } boundary;
  struct Output {
    std::string dir = ".";
    std::size_t cadence = 0;
    int precision = 17;
  } output;

  // Directory against which input file paths are resolved.
  std::filesystem::path base_dir = ".";
};

// Parses and validates (including validate_params on the physics section).
ConfigDocument parse_config(std::string_view text);
ConfigDocument load_config(const std::filesystem::path& path);

PhysicalConstants constants_of(const ConfigDocument& doc);
Grid grid_of(const ConfigDocument& doc);

// Builds the solver configuration: initial state, forcing and boundary data per the document.
RunConfig make_run_config(const ConfigDocument& doc);

}  // namespace swerect
