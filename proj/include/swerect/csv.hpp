#pragma once

#include <filesystem>
#include <string>

#include "swerect/elliptic.hpp"
#include "swerect/evolve.hpp"
#include "swerect/grid.hpp"

namespace swerect {

// Header "x,y,u,v,phi", one row per node in x-major order, '\n' line ends.
std::string format_field_csv(const StateField& state, int precision = 17);
void write_field_csv(const StateField& state, const std::filesystem::path& path, int precision = 17);
// Reconstructs the grid from the x and y columns.
StateField read_field_csv(const std::filesystem::path& path);
StateField parse_field_csv(const std::string& text);

// Header "t,energy".
std::string format_energy_csv(const EnergyLog& log, int precision = 17);
void write_energy_csv(const EnergyLog& log, const std::filesystem::path& path, int precision = 17);
EnergyLog read_energy_csv(const std::filesystem::path& path);

// Header "x,y,theta1,theta2".
void write_theta_csv(const ThetaField& theta, const std::filesystem::path& path, int precision = 17);

std::string format_number(double value, int precision = 17);

}  // namespace swerect
