// SPDX-License-Identifier: MIT
// Snapshot writers: VTU (ASCII XML, one sub-quad per node cell of the
// collocation grid) for 2D runs, a plain CSV profile for 1D runs.
#pragma once

#include <string>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/space.hpp"

namespace gdg {

void write_vtu(const std::string& path, const DgSpace<2>& space, const std::vector<State<2>>& u,
               const GasModel& gas);

void write_profile_csv(const std::string& path, const DgSpace<1>& space,
                       const std::vector<State<1>>& u, const GasModel& gas);

} // namespace gdg
