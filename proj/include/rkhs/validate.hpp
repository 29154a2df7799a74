// Seeded validation campaigns over the kernel/map catalogue: Gram positivity,
// the kernel transformation identity, series-vs-quotient comparison on the
// tetrablock, isometry and reproducing audits. Every campaign is a pure
// function of its config and emits a structured Report.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rkhs/geometry.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/norms.hpp"
#include "rkhs/polyalg.hpp"

namespace rkhs {

struct CampaignConfig {
  int n_points = 32;
  int n_pairs = 200;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  double margin = 0.05;
  int truncation = 60;
};

struct Report {
  std::string campaign;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> config;
  std::string version;

  std::string to_json() const;
  std::string to_csv() const;  // header line plus one data row
};

// Gram positivity on seeded in-domain points. Candidate points that fail any
// kernel guard against the already-accepted set count as skips; more than 20%
// skipped attempts aborts the campaign (CampaignDegenerate).
Report run_psd(const KernelId& k, const CampaignConfig& cfg);
Report run_psd(const KernelFn& fn, const std::string& kernel_tag,
               const DomainId& dom, const CampaignConfig& cfg);
Report run_psd_pushforward(const KernelId& base, const ProperMap& m,
                           const CampaignConfig& cfg);

// max over pairs of |J(z) closed(phi z, phi w) conj(J(w)) - signed minus part|
// scaled by 1/(1 + |closed|); pairs need |J| > margin at both points
Report run_identity(const ProperMap& m, const KernelId& base,
                    const KernelId& closed, const CampaignConfig& cfg);
Report run_identity(const ProperMap& m, const KernelId& base,
                    const KernelFn& closed, const std::string& closed_tag,
                    const CampaignConfig& cfg);

// tetrablock series (K = cfg.truncation) against the lifted quotient route,
// after fixing the one positive constant at the first valid pair
Report run_series_compare(const CampaignConfig& cfg);

// gamma images of all target monomials up to max_degree: anti-invariance,
// Gram positivity under the coefficient pairing, and exact agreement of the
// Gram diagonal with phi_norm_sq
Report run_isometry(const ProperMap& m, const SpaceId& base, int max_degree);

// pairs gamma images against the truncated antisymmetrized kernel and checks
// point values f(phi(w)) are reproduced; reports the truncation reaching tol
Report run_reproducing(const ProperMap& m, const CampaignConfig& cfg);

// closed form for the coordinate-squaring self-map of the bidisc: one quarter
// of the bidisc kernel
KernelFn quarter_polydisc_fn(int d);

}  // namespace rkhs
