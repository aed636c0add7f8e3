#pragma once

#include <string>

#include "pfsched/lp.hpp"
#include "pfsched/pf.hpp"

namespace pfsched {

enum class CertificateKind { MonPsp, Structured, GeneralPsp, WrrTight };
std::string certificate_kind_name(CertificateKind);
CertificateKind certificate_kind_from_name(const std::string&);

// All quantities live in the scaled frame: time stretched by tables.scale,
// weights multiplied by weight_scale. alg_scaled = sum_j w'_j C'_j.
struct DualCertificate {
  CertificateKind kind = CertificateKind::MonPsp;
  Rat kappa;
  Rat lambda;  // GeneralPsp quantile level; 0 otherwise
  Int weight_scale = 1;
  DualTables tables;
  Rat alg_scaled;
  Rat dual_objective;  // sum alpha - sum beta, as stored
  Rat guarantee;       // implied ALG <= guarantee * OPT
};

// Completion duals alpha_j = w_j C_j with beta rows 1/kappa times the CP
// multipliers over the unfinished set (hypothetical rates for unreleased
// jobs). Checks the rate-monotonicity prerequisite on every interval and
// aborts with a witness when it fails.
DualCertificate monpsp_certificate(const Instance&, const EventTimeline&, SolverChoice solver,
                                   const Rat& kappa, double tol);

// Release at zero, one event interval, common completion C: alpha_j = w_j C,
// beta rows (1 - (t+1/2)/C) times the interval multipliers. DLP(1)-feasible
// with every covering constraint tight.
DualCertificate structured_certificate(const Instance&, const EventTimeline&);

// Quantile-threshold duals over the unfinished set; needs a packing row
// family but no monotonicity. Weights are scaled to integers internally.
DualCertificate general_psp_certificate(const Instance&, const EventTimeline&, const Rat& kappa,
                                        const Rat& lambda, double tol);

// Closed-form tight dual for weighted round-robin on one machine, release 0.
// Integer processing after scaling; completions come from the WSPT formula,
// not from a run.
DualCertificate wrr_tight_certificate(const Instance&);

struct CertificateVerdict {
  bool ok = false;        // feasible and the objective identity holds
  bool feasible = false;  // max_violation <= tol
  Rat max_violation;
  DualCheckWitness worst;
  Rat dual_objective;     // recomputed from the tables
  Rat alg_scaled;
  Rat identity_residual;  // relative gap to the kind's objective identity
  Rat ratio;              // certificate guarantee
  std::string note;
};

CertificateVerdict verify_certificate(const Instance&, const DualCertificate&, double tol);

// Largest covering slack of a structured certificate over jobs and candidate
// cells (all segment endpoints). Exact zero for packing rows, where the slack
// is affine per job.
Rat structured_tightness_gap(const Instance&, const DualCertificate&);

}  // namespace pfsched
