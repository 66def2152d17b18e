// SPDX-License-Identifier: MIT
#include "gdg/vtk.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>

#include "gdg/check.hpp"

namespace gdg {

void write_vtu(const std::string& path, const DgSpace<2>& space, const std::vector<State<2>>& u,
               const GasModel& gas) {
  std::ofstream out(path);
  GDG_REQUIRE(out.good(), "vtu: cannot open " << path << " for writing");
  out << std::setprecision(12);

  const int k = space.degree();
  const int n = space.n_dofs();
  const int n_sub = space.mesh().n_cells() * k * k;

  out << "<?xml version=\"1.0\"?>\n"
      << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
      << "<UnstructuredGrid>\n"
      << "<Piece NumberOfPoints=\"" << n << "\" NumberOfCells=\"" << n_sub << "\">\n";

  out << "<Points>\n<DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (int i = 0; i < n; ++i) {
    const auto& x = space.node(i);
    out << x[0] << " " << x[1] << " 0\n";
  }
  out << "</DataArray>\n</Points>\n";

  out << "<Cells>\n<DataArray type=\"Int32\" Name=\"connectivity\" format=\"ascii\">\n";
  for (int c = 0; c < space.mesh().n_cells(); ++c)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) {
        const auto id = [&](int a, int b) { return space.dof(c, b * (k + 1) + a); };
        out << id(i, j) << " " << id(i + 1, j) << " " << id(i + 1, j + 1) << " " << id(i, j + 1)
            << "\n";
      }
  out << "</DataArray>\n<DataArray type=\"Int32\" Name=\"offsets\" format=\"ascii\">\n";
  for (int s = 1; s <= n_sub; ++s) out << 4 * s << "\n";
  out << "</DataArray>\n<DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
  for (int s = 0; s < n_sub; ++s) out << "9\n";
  out << "</DataArray>\n</Cells>\n";

  out << "<PointData Scalars=\"density\">\n";
  out << "<DataArray type=\"Float64\" Name=\"density\" format=\"ascii\">\n";
  for (int i = 0; i < n; ++i) out << u[i][0] << "\n";
  out << "</DataArray>\n<DataArray type=\"Float64\" Name=\"pressure\" format=\"ascii\">\n";
  for (int i = 0; i < n; ++i) out << gas.pressure(u[i]) << "\n";
  out << "</DataArray>\n<DataArray type=\"Float64\" Name=\"velocity\" NumberOfComponents=\"3\" "
         "format=\"ascii\">\n";
  for (int i = 0; i < n; ++i)
    out << u[i][1] / u[i][0] << " " << u[i][2] / u[i][0] << " 0\n";
  out << "</DataArray>\n</PointData>\n";

  out << "</Piece>\n</UnstructuredGrid>\n</VTKFile>\n";
  GDG_REQUIRE(out.good(), "vtu: write to " << path << " failed");
}

void write_profile_csv(const std::string& path, const DgSpace<1>& space,
                       const std::vector<State<1>>& u, const GasModel& gas) {
  std::ofstream out(path);
  GDG_REQUIRE(out.good(), "profile: cannot open " << path << " for writing");
  out << std::setprecision(12);
  std::vector<int> order(space.n_dofs());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return space.node(a)[0] < space.node(b)[0]; });
  out << "x,rho,v,p,e\n";
  for (int i : order) {
    const auto& s = u[i];
    out << space.node(i)[0] << "," << s[0] << "," << s[1] / s[0] << "," << gas.pressure(s) << ","
        << s[2] << "\n";
  }
  GDG_REQUIRE(out.good(), "profile: write to " << path << " failed");
}

} // namespace gdg
