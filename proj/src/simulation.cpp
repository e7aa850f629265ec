// Copyright 2026 The cdftest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdftest/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cdftest/normal.hpp"
#include "cdftest/parallel.hpp"

namespace cdftest {

void DgpSpec::validate() const {
  if (dgp_id < 0 || dgp_id > 3) throw std::invalid_argument("DgpSpec: dgp_id must be 0..3");
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("DgpSpec: sample sizes must be >= 1");
  if (pairing == Pairing::matched && n1 != n2) {
    throw std::invalid_argument("DgpSpec: matched pairing requires n1 == n2");
  }
}

void StudyPlan::validate() const {
  if (dgps.empty()) throw std::invalid_argument("StudyPlan: no design cells");
  for (const auto& d : dgps) d.validate();
  if (tau_list.empty()) throw std::invalid_argument("StudyPlan: tau_list must be nonempty");
  for (double t : tau_list) {
    if (!(t > 0.0)) throw std::invalid_argument("StudyPlan: tau values must be > 0");
  }
  if (n_mc < 1) throw std::invalid_argument("StudyPlan: n_mc must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("StudyPlan: alpha must lie in (0, 1)");
  }
  if (m_nodes < 1) throw std::invalid_argument("StudyPlan: m_nodes must be >= 1");
}

ParamBox simulation_box() {
  return ParamBox({-0.2, std::exp2(-0.2)}, {0.2, std::exp2(0.2)});
}

NuMeasure default_simulation_nu(DgpFamily family) {
  return family == DgpFamily::continuous ? NuMeasure::normal(0.0, 5.0 / 3.0)
                                         : NuMeasure::normal(5.0, 5.0);
}

std::vector<std::vector<double>> cholesky_lower(
    const std::vector<std::vector<double>>& sigma) {
  const std::size_t d = sigma.size();
  if (d == 0) throw std::invalid_argument("cholesky_lower: empty matrix");
  for (const auto& row : sigma) {
    if (row.size() != d) throw std::invalid_argument("cholesky_lower: matrix not square");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::fabs(sigma[i][j] - sigma[j][i]) > 1e-12) {
        throw std::invalid_argument("cholesky_lower: matrix not symmetric");
      }
    }
  }
  std::vector<std::vector<double>> l(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = sigma[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0.0)) {
          throw std::invalid_argument("cholesky_lower: matrix not positive definite");
        }
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

std::vector<std::vector<double>> gaussian_copula_sample(
    const std::vector<std::vector<double>>& sigma,
    std::span<const QuantileFn> quantile_fns, std::size_t n, RandomStream& rng) {
  const std::size_t d = sigma.size();
  if (quantile_fns.size() != d) {
    throw std::invalid_argument("gaussian_copula_sample: one quantile per coordinate");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (std::fabs(sigma[i][i] - 1.0) > 1e-12) {
      throw std::invalid_argument("gaussian_copula_sample: diagonal must be 1");
    }
  }
  const auto l = cholesky_lower(sigma);

  std::vector<std::vector<double>> rows(n, std::vector<double>(d, 0.0));
  std::vector<double> w(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) w[c] = normal_quantile(rng.next_open_double());
    for (std::size_t c = 0; c < d; ++c) {
      double v = 0.0;
      for (std::size_t k = 0; k <= c; ++k) v += l[c][k] * w[k];
      rows[i][c] = quantile_fns[c](normal_cdf(v));
    }
  }
  return rows;
}

namespace {

const std::vector<std::vector<double>> kSigma3 = {
    {1.0, 0.5, 0.5}, {0.5, 1.0, 0.0}, {0.5, 0.0, 1.0}};

double discrete_uniform_quantile(double u) {
  const double v = std::ceil(10.0 * u);
  return std::min(std::max(v, 1.0), 10.0);
}

double mix_y(DgpFamily family, int dgp_id, double second, double third) {
  if (family == DgpFamily::continuous) {
    switch (dgp_id) {
      case 0: return second;                        // Z
      case 1: return 0.5 * second + 0.5 * third;    // 0.5Z + 0.5U
      case 2: return 0.25 * second + 0.75 * third;  // 0.25Z + 0.75U
      default: return third;                        // U
    }
  }
  switch (dgp_id) {
    case 0: return second;                        // U
    case 1: return 0.9 * second + 0.1 * third;    // 0.9U + 0.1V
    case 2: return 0.75 * second + 0.25 * third;  // 0.75U + 0.25V
    default: return 0.5 * second + 0.5 * third;   // 0.5U + 0.5V
  }
}

}  // namespace

GeneratedData generate(const DgpSpec& dgp, RandomStream& rng) {
  dgp.validate();
  const bool continuous = dgp.family == DgpFamily::continuous;

  if (dgp.pairing == Pairing::matched) {
    std::vector<QuantileFn> marginals;
    if (continuous) {
      marginals = {[](double u) { return normal_quantile(u); },
                   [](double u) { return normal_quantile(u); },
                   [](double u) { return -3.0 + 6.0 * u; }};
    } else {
      marginals = {discrete_uniform_quantile, discrete_uniform_quantile,
                   discrete_uniform_quantile};
    }
    const auto rows = gaussian_copula_sample(kSigma3, marginals,
                                             static_cast<std::size_t>(dgp.n1), rng);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(rows.size());
    for (const auto& row : rows) {
      pairs.emplace_back(row[0], mix_y(dgp.family, dgp.dgp_id, row[1], row[2]));
    }
    PairedSample paired(std::move(pairs));
    return GeneratedData{paired.x_sample(), paired.y_sample(), std::move(paired)};
  }

  // Independent samples: X block, then both driver blocks (drawn for every
  // dgp_id so that designs sharing a seed also share the underlying draws).
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(dgp.n1));
  for (int i = 0; i < dgp.n1; ++i) {
    const double u = rng.next_open_double();
    xs.push_back(continuous ? normal_quantile(u) : discrete_uniform_quantile(u));
  }
  std::vector<double> second(static_cast<std::size_t>(dgp.n2));
  std::vector<double> third(static_cast<std::size_t>(dgp.n2));
  for (auto& v : second) {
    const double u = rng.next_open_double();
    v = continuous ? normal_quantile(u) : discrete_uniform_quantile(u);
  }
  for (auto& v : third) {
    const double u = rng.next_open_double();
    v = continuous ? -3.0 + 6.0 * u : discrete_uniform_quantile(u);
  }
  std::vector<double> ys;
  ys.reserve(second.size());
  for (std::size_t i = 0; i < second.size(); ++i) {
    ys.push_back(mix_y(dgp.family, dgp.dgp_id, second[i], third[i]));
  }
  return GeneratedData{UnivariateSample(std::move(xs)), UnivariateSample(std::move(ys)),
                       std::nullopt};
}

RateTable warp_speed_study(const StudyPlan& plan) {
  plan.validate();

  RateTable table;
  table.rows = plan.dgps;
  table.taus = plan.tau_list;
  table.rates.assign(plan.dgps.size(), std::vector<double>(plan.tau_list.size(), 0.0));

  const std::size_t n_taus = plan.tau_list.size();
  const std::size_t n_mc = static_cast<std::size_t>(plan.n_mc);
  const ParamBox box = plan.box;
  const std::span<const ParamBox> boxes(&box, 1);
  const std::span<const TransformFamily> families(&plan.family, 1);

  for (std::size_t row = 0; row < plan.dgps.size(); ++row) {
    const DgpSpec& dgp = plan.dgps[row];
    const NuMeasure nu = plan.nu ? *plan.nu : default_simulation_nu(dgp.family);
    const QuadratureGrid grid = make_grid(nu, plan.m_nodes);

    const double n_total = static_cast<double>(dgp.n1 + dgp.n2);
    const double t_n = static_cast<double>(dgp.n1) * static_cast<double>(dgp.n2) / n_total;
    const double sqrt_t_n = std::sqrt(t_n);

    std::vector<double> statistics(n_mc, 0.0);
    std::vector<std::vector<double>> boot(n_taus, std::vector<double>(n_mc, 0.0));

    parallel_for_index(n_mc, plan.threads, [&](std::size_t r) {
      RandomStream data_rng(plan.seed, 2 * r);
      const GeneratedData data = generate(dgp, data_rng);

      const std::vector<UnivariateSample> comps{data.y};
      const CdfDiffField base_field(data.x, comps, families);
      const double l_base = minimize(base_field, boxes, grid, plan.minimize).value;
      statistics[r] = t_n * l_base;

      RandomStream boot_rng(plan.seed, 2 * r + 1);
      std::vector<UnivariateSample> base_holder;  // single element
      std::vector<UnivariateSample> comp_boots;
      if (dgp.pairing == Pairing::matched) {
        const PairedSample pair_boot = resample_pairs(*data.pairs, boot_rng);
        base_holder.push_back(pair_boot.x_sample());
        comp_boots.push_back(pair_boot.y_sample());
      } else {
        base_holder.push_back(resample_iid(data.x, boot_rng));
        comp_boots.push_back(resample_iid(data.y, boot_rng));
      }
      const UnivariateSample& base_boot = base_holder.front();

      for (std::size_t ti = 0; ti < n_taus; ++ti) {
        const double tau = plan.tau_list[ti];
        const double mix = tau * sqrt_t_n;
        const CdfDiffField pert(data.x, comps, families, mix, base_boot, comp_boots);
        const double l_pert = minimize(pert, boxes, grid, plan.minimize).value;
        boot[ti][r] = (l_pert - l_base) / (tau * tau);
      }
    });

    for (std::size_t ti = 0; ti < n_taus; ++ti) {
      const double crit = critical_value(boot[ti], plan.alpha);
      std::size_t rejections = 0;
      for (double s : statistics) {
        if (s > crit) ++rejections;
      }
      table.rates[row][ti] =
          static_cast<double>(rejections) / static_cast<double>(n_mc);
    }
  }
  return table;
}

namespace {

std::string dgp_family_name(DgpFamily f) {
  return f == DgpFamily::continuous ? "continuous" : "discrete";
}

std::string pairing_name(Pairing p) {
  return p == Pairing::independent ? "independent" : "matched";
}

}  // namespace

std::string format_rate_table_text(const RateTable& table) {
  std::ostringstream out;
  char buf[64];
  // One block per (family, pairing) group, paper layout inside.
  std::vector<std::pair<DgpFamily, Pairing>> groups;
  for (const auto& row : table.rows) {
    const std::pair<DgpFamily, Pairing> g{row.family, row.pairing};
    bool seen = false;
    for (const auto& have : groups) seen = seen || have == g;
    if (!seen) groups.push_back(g);
  }
  for (const auto& [fam, pairing] : groups) {
    out << dgp_family_name(fam) << ", " << pairing_name(pairing) << " samples\n";
    out << "  DGP    n1    n2";
    for (double tau : table.taus) {
      std::snprintf(buf, sizeof buf, " %8.2f", tau);
      out << buf;
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      if (row.family != fam || row.pairing != pairing) continue;
      std::snprintf(buf, sizeof buf, "  (%d) %5d %5d", row.dgp_id, row.n1, row.n2);
      out << buf;
      for (double rate : table.rates[r]) {
        std::snprintf(buf, sizeof buf, " %8.3f", rate);
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string format_rate_table_csv(const RateTable& table) {
  std::ostringstream out;
  char buf[64];
  out << "family,pairing,dgp,n1,n2";
  for (double tau : table.taus) {
    std::snprintf(buf, sizeof buf, ",tau=%g", tau);
    out << buf;
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    out << dgp_family_name(row.family) << ',' << pairing_name(row.pairing) << ','
        << row.dgp_id << ',' << row.n1 << ',' << row.n2;
    for (double rate : table.rates[r]) {
      std::snprintf(buf, sizeof buf, ",%.3f", rate);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cdftest
