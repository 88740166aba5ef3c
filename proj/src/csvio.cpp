#include "kinetra/csvio.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace kinetra::io {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void write_maxwellian_csv(const MaxwellianTable& table, std::ostream& os) {
  const int n = table.grid.n_speeds;
  os << "rho";
  for (int k = 0; k < n; ++k) os << ",v_" << k;
  os << ",F_eq,U_eq,energy,variance\n";
  for (int i = 0; i < table.n_rho(); ++i) {
    os << fmt(table.rho_samples[static_cast<std::size_t>(i)]);
    for (int k = 0; k < n; ++k)
      os << ',' << fmt(table.maxwellians[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    os << ',' << fmt(table.f_eq[static_cast<std::size_t>(i)]) << ','
       << fmt(table.u_eq[static_cast<std::size_t>(i)]) << ','
       << fmt(table.energy_eq[static_cast<std::size_t>(i)]) << ','
       << fmt(table.variance_eq[static_cast<std::size_t>(i)]) << '\n';
  }
}

MaxwellianTable read_maxwellian_csv(std::istream& is, const VelocityGrid& grid) {
  MaxwellianTable t;
  t.grid = grid;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("maxwellian csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != grid.n_speeds + 5)
      throw ConfigError("maxwellian csv: wrong column count");
    t.rho_samples.push_back(row[0]);
    t.maxwellians.emplace_back(row.begin() + 1, row.begin() + 1 + grid.n_speeds);
    const std::size_t base = static_cast<std::size_t>(grid.n_speeds) + 1;
    t.f_eq.push_back(row[base]);
    t.u_eq.push_back(row[base + 1]);
    t.energy_eq.push_back(row[base + 2]);
    t.variance_eq.push_back(row[base + 3]);
  }
  return t;
}

void write_diffusion_csv(const DiffusionProfile& profile, std::ostream& os) {
  os << "rho,mu,model,classification\n";
  const std::string model = to_string(profile.model);
  const std::string cls = to_string(profile.classification);
  for (std::size_t i = 0; i < profile.rho_samples.size(); ++i)
    os << fmt(profile.rho_samples[i]) << ',' << fmt(profile.mu[i]) << ',' << model << ',' << cls
       << '\n';
}

void write_intervals_summary(const DiffusionProfile& profile, std::ostream& os) {
  os << "model: " << to_string(profile.model) << '\n';
  os << "classification: " << to_string(profile.classification) << '\n';
  os << "negative-mu intervals: " << profile.negative_intervals.size() << '\n';
  for (const auto& [a, b] : profile.negative_intervals)
    os << "  (" << fmt(a) << ", " << fmt(b) << ")\n";
}

void write_snapshot_csv(const Snapshot& snap, int n_speeds, std::ostream& os) {
  const bool with_nodes = !snap.values.empty();
  os << "x,rho,flux,u,eps";
  if (with_nodes)
    for (int k = 0; k < n_speeds; ++k) os << ",f_" << k;
  os << '\n';
  for (std::size_t j = 0; j < snap.x.size(); ++j) {
    os << fmt(snap.x[j]) << ',' << fmt(snap.rho[j]) << ',' << fmt(snap.flux[j]) << ','
       << fmt(snap.u[j]) << ',' << fmt(snap.eps[j]);
    if (with_nodes)
      for (int k = 0; k < n_speeds; ++k)
        os << ',' << fmt(snap.values[j * static_cast<std::size_t>(n_speeds) + static_cast<std::size_t>(k)]);
    os << '\n';
  }
}

void write_wsnapshot_csv(const WSnapshot& snap, int n_nodes, std::ostream& os) {
  const bool with_nodes = !snap.values.empty();
  os << "x,rho,q,u,eps";
  if (with_nodes)
    for (int k = 0; k < n_nodes; ++k) os << ",g_" << k;
  os << '\n';
  for (std::size_t j = 0; j < snap.x.size(); ++j) {
    os << fmt(snap.x[j]) << ',' << fmt(snap.rho[j]) << ',' << fmt(snap.q[j]) << ','
       << fmt(snap.u[j]) << ',' << fmt(snap.eps[j]);
    if (with_nodes)
      for (int k = 0; k < n_nodes; ++k)
        os << ',' << fmt(snap.values[j * static_cast<std::size_t>(n_nodes) + static_cast<std::size_t>(k)]);
    os << '\n';
  }
}

void write_trajectory_header(std::ostream& os) { os << "t,i,x,v,w\n"; }

void write_trajectory_rows(double t, const VehicleArray& vehicles, const MicroParams& params,
                           std::ostream& os) {
  const auto v = vehicle_speeds(vehicles, params);
  const double L = vehicles.ring_length;
  for (int i = 0; i < vehicles.n(); ++i) {
    double xw = std::fmod(vehicles.x[static_cast<std::size_t>(i)], L);
    if (xw < 0.0) xw += L;
    os << fmt(t) << ',' << i << ',' << fmt(xw) << ',' << fmt(v[static_cast<std::size_t>(i)]) << ','
       << fmt(vehicles.w[static_cast<std::size_t>(i)]) << '\n';
  }
}

void write_macro_profile_csv(const MacroProfile& profile, std::ostream& os) {
  os << "x,rho,flux,u,eps\n";
  for (std::size_t j = 0; j < profile.x.size(); ++j)
    os << fmt(profile.x[j]) << ',' << fmt(profile.rho[j]) << ','
       << fmt(profile.rho[j] * profile.u[j]) << ',' << fmt(profile.u[j]) << ',' << fmt(0.0)
       << '\n';
}

}  // namespace kinetra::io
