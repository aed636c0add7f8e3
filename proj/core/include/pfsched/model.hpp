#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pfsched/rational.hpp"

namespace pfsched {

enum class ModelKind { Single, Identical, Related, Unrelated, Packing };

std::string model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

struct Job {
  Rat p, w, r;
};

struct PolytopeModel {
  ModelKind kind = ModelKind::Single;
  int m = 1;                                   // machines (Identical/Related/Unrelated)
  std::vector<Rat> speeds;                     // Related: non-increasing, size m
  std::vector<std::vector<Rat>> speed_matrix;  // Unrelated: m rows x n cols
  std::vector<std::vector<Rat>> rows;          // Packing: D rows x n cols
};

struct Instance {
  PolytopeModel model;
  std::vector<Job> jobs;

  int n() const { return static_cast<int>(jobs.size()); }
  int machines() const;
  bool assignment_kind() const { return model.kind != ModelKind::Packing && model.kind != ModelKind::Single; }
  // Unified s_ij view for machine-based kinds. Invalid for Packing.
  Rat speed(int i, int j) const;
  Rat total_weight() const;
};

// Throws ParseError on structural problems (dimension mismatches, unsorted
// related speeds, unschedulable jobs, nonpositive p or w).
void validate_instance(const Instance&);

struct ParsedInstance {
  Instance instance;
  std::vector<std::string> warnings;  // e.g. stripped zero-processing jobs
};

ParsedInstance parse_instance(const nlohmann::json& doc);
ParsedInstance parse_instance_file(const std::string& path);
nlohmann::json instance_to_json(const Instance&);
std::string instance_digest(const Instance&);  // "fnv1a:<16 hex digits>"

// Integers stay JSON numbers, everything else becomes an "a/b" string.
Rat rat_from_json(const nlohmann::json& v, const std::string& where);
nlohmann::json rat_json(const Rat&);

struct RatePiece {
  Rat t0, t1;
  std::vector<Rat> y;                    // per job
  std::vector<std::vector<Rat>> x;       // m x n witness for machine kinds; may be empty
};

struct Schedule {
  std::vector<RatePiece> pieces;         // contiguous in time
  std::vector<Rat> completion;           // per job
  Rat objective;                         // sum_j w_j C_j
};

Rat weighted_completion_objective(const Instance&, const std::vector<Rat>& completion);

struct FeasibilityReport {
  bool ok = true;
  double max_violation = 0.0;
  std::string detail;
};

FeasibilityReport check_schedule(const Instance&, const Schedule&, double tol);
// Rate-vector feasibility for one instant; x is the witness for Unrelated.
FeasibilityReport check_rates(const Instance&, const std::vector<Rat>& y,
                              const std::vector<std::vector<Rat>>& x, double tol);

// Adversarial families. Times that grow with the wave structure are already
// scaled by n so that unit-rate round-robin hits the constructions' invariants.
Instance gen_rr_lb_simple(int n);
Instance gen_rr_lb_table(int n);
Instance gen_nonmonotone_counterexample();
Instance gen_migration_lb(int n);  // n must be a perfect square

extern const Rat kSqrt3;  // 16 correct decimal digits

struct RandomSpec {
  ModelKind kind = ModelKind::Single;
  int n_min = 1, n_max = 5;
  int m_min = 1, m_max = 3;
  int d_min = 1, d_max = 3;  // packing row counts
  long max_value = 9;        // p/w/speed integer magnitude, >= 1
  long max_release = 0;      // integer releases in [0, max_release]
  bool unit_weights = false;
  bool unit_jobs = false;
  bool restricted = false;   // Unrelated with s_ij in {0,1}
};

Instance random_instance(const RandomSpec&, std::uint64_t seed);

}  // namespace pfsched
