#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hylos/grid.hpp"
#include "hylos/observables.hpp"
#include "hylos/profile.hpp"

namespace hylos {

/// Reals are written with 17 significant digits so that reading back is bit-exact.
std::string format_real(double v);

/// `# dim,n1xn2,L1xL2` then one `x1[,x2[,x3]],re,im` row per node in storage order.
void write_snapshot(const std::filesystem::path& path, const ComplexField& field);
ComplexField read_snapshot(const std::filesystem::path& path);

/// `# N,omega,NS|NKG,u0,sigma` then `r,u` rows.
void write_profile(const std::filesystem::path& path, const RadialProfile& profile);
RadialProfile read_profile(const std::filesystem::path& path);

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows);

}  // namespace hylos
