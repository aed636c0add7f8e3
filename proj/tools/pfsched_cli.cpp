// Command-line harness: runs the fair scheduler and its baselines, builds and
// checks dual certificates, reproduces the adversarial families, and sweeps
// random instances to CSV. Every command emits one JSON document (CSV for
// sweeps); timing lives in its own subobject so documents stay diffable.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pfsched/baselines.hpp"
#include "pfsched/certify.hpp"
#include "pfsched/lp.hpp"
#include "pfsched/report.hpp"

namespace {

using nlohmann::json;
using namespace pfsched;

ModelKind parse_model(const std::string& s, bool& restricted) {
  restricted = false;
  if (s == "single") return ModelKind::Single;
  if (s == "identical") return ModelKind::Identical;
  if (s == "related") return ModelKind::Related;
  if (s == "unrelated") return ModelKind::Unrelated;
  if (s == "restricted") {
    restricted = true;
    return ModelKind::Unrelated;
  }
  if (s == "packing") return ModelKind::Packing;
  throw ParseError("unknown model: " + s);
}

void emit(const json& doc, const std::string& out) {
  const std::string text = result_dump(doc);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw ParseError("cannot open output file: " + out);
    f << text;
  }
}

bool uniform_release(const Instance& ins) {
  for (const auto& jb : ins.jobs)
    if (jb.r != ins.jobs[0].r) return false;
  return !ins.jobs.empty();
}

// Named-denominator ratios; skipped when the denominator is not positive.
void add_ratio(json& ratios, const std::string& name, const Rat& num, const Rat& den) {
  if (den <= 0) return;
  ratios[name] = rat_dbl(num / den);
}

Schedule run_algorithm(const Instance& ins, const std::string& algo, SolverChoice solver,
                       double tol, EventTimeline* tl_out) {
  if (algo == "pf") {
    EventTimeline tl = run_pf(ins, {solver, tol});
    Schedule sch = timeline_schedule(ins, tl);
    if (tl_out) *tl_out = std::move(tl);
    return sch;
  }
  if (algo == "srpt") return srpt_single(ins);
  if (algo == "spt") return preemptive_spt_related(ins);
  if (algo == "wspt") return wspt_nonpreemptive_unrelated(ins);
  throw ParseError("unknown algorithm: " + algo);
}

struct RunArgs {
  std::string instance, algorithm = "pf", solver = "auto", out;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool with_lp1 = false;
};

int cmd_run(const RunArgs& a) {
  Stopwatch sw;
  ParsedInstance parsed = parse_instance_file(a.instance);
  const Instance& ins = parsed.instance;

  json doc = result_skeleton("run", ins);
  doc["seed"] = a.seed;
  doc["algorithm"] = a.algorithm;
  for (const auto& w : parsed.warnings) doc["warnings"].push_back(w);

  EventTimeline tl;
  Schedule sch = run_algorithm(ins, a.algorithm, solver_from_name(a.solver), a.tol, &tl);
  doc["objective"] = rat_json(sch.objective);
  doc["objective_value"] = rat_dbl(sch.objective);
  doc["schedule"] = schedule_json(sch);
  if (a.algorithm == "pf") doc["timeline"] = timeline_json(tl);

  json baselines = json::object();
  json ratios = json::object();
  if (ins.model.kind == ModelKind::Single) {
    const Rat srpt = srpt_single_objective(ins);
    baselines["srpt"] = rat_json(srpt);
    add_ratio(ratios, a.algorithm + "_over_srpt", sch.objective, srpt);
  }
  if ((ins.model.kind == ModelKind::Related || ins.model.kind == ModelKind::Identical) &&
      uniform_release(ins)) {
    bool unit = true;
    for (const auto& jb : ins.jobs) unit = unit && jb.w == 1;
    if (unit) {
      std::vector<Rat> p;
      for (const auto& jb : ins.jobs) p.push_back(jb.p);
      std::vector<Rat> speeds(ins.machines());
      for (int i = 0; i < ins.machines(); ++i) speeds[i] = ins.speed(i, 0);
      const Rat opt0 = opt0_related(speeds, p) + ins.jobs[0].r * Rat(ins.n());
      baselines["opt_uniform_release"] = rat_json(opt0);
      add_ratio(ratios, a.algorithm + "_over_opt", sch.objective, opt0);
    }
  }
  if (a.with_lp1) {
    TimeIndexedLp lp = build_time_indexed(ins, Rat(1));
    const LpSolution sol = simplex_solve(lp.problem);
    if (sol.status != LpStatus::Optimal) throw SolverError("LP(1) did not solve to optimality");
    const Rat lp1 = time_indexed_original_value(lp, sol.objective);
    baselines["lp1"] = rat_json(lp1);
    add_ratio(ratios, a.algorithm + "_over_lp1", sch.objective, lp1);
  }
  doc["baselines"] = baselines;
  doc["ratios"] = ratios;
  doc["timing"] = {{"total_ms", sw.ms()}};
  doc["result_digest"] = result_digest(doc);
  emit(doc, a.out);
  return 0;
}

struct CertifyArgs {
  std::string instance, kind, solver = "auto", out, verify_file;
  std::string kappa = "2", lambda = "2/3";
  double tol = 1e-8;
};

int cmd_certify(const CertifyArgs& a) {
  Stopwatch sw;
  ParsedInstance parsed = parse_instance_file(a.instance);
  const Instance& ins = parsed.instance;

  json doc = result_skeleton("certify", ins);
  DualCertificate cert;
  if (!a.verify_file.empty()) {
    std::ifstream f(a.verify_file);
    if (!f) throw ParseError("cannot open certificate file: " + a.verify_file);
    json cdoc;
    try {
      f >> cdoc;
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid certificate JSON: ") + e.what());
    }
    cert = certificate_from_json(cdoc);
    doc["kind"] = certificate_kind_name(cert.kind);
  } else {
    const CertificateKind kind = certificate_kind_from_name(a.kind);
    doc["kind"] = a.kind;
    const Rat kappa = rat_from_string(a.kappa);
    const Rat lambda = rat_from_string(a.lambda);
    const SolverChoice solver = solver_from_name(a.solver);
    if (kind == CertificateKind::WrrTight) {
      cert = wrr_tight_certificate(ins);
    } else {
      EventTimeline tl = run_pf(ins, {solver, a.tol});
      switch (kind) {
        case CertificateKind::MonPsp:
          cert = monpsp_certificate(ins, tl, solver, kappa, a.tol);
          break;
        case CertificateKind::Structured:
          cert = structured_certificate(ins, tl);
          break;
        case CertificateKind::GeneralPsp:
          cert = general_psp_certificate(ins, tl, kappa, lambda, a.tol);
          break;
        default:
          break;
      }
    }
  }

  const CertificateVerdict verdict = verify_certificate(ins, cert, a.tol);
  doc["certificate"] = certificate_json(cert);
  doc["verdict"] = verdict_json(verdict);
  const Rat denom = Rat(cert.tables.scale) * Rat(cert.weight_scale);
  doc["algorithm_objective"] = rat_json(cert.alg_scaled / denom);
  doc["timing"] = {{"total_ms", sw.ms()}};
  doc["result_digest"] = result_digest(doc);
  emit(doc, a.out);

  if (verdict.ok) {
    std::cerr << "certificate accepted: ALG <= " << rat_str(cert.guarantee) << "*OPT\n";
    return 0;
  }
  throw SolverError("certificate rejected: " + verdict.note);
}

struct LowerboundArgs {
  std::string family, out;
  int n = 100;
};

int cmd_lowerbound(const LowerboundArgs& a) {
  Stopwatch sw;
  json doc;
  doc["schema"] = kResultSchema;
  doc["command"] = "lowerbound";
  doc["family"] = a.family;
  doc["n"] = a.n;

  if (a.family == "rr-simple" || a.family == "rr-table") {
    const Instance ins =
        a.family == "rr-simple" ? gen_rr_lb_simple(a.n) : gen_rr_lb_table(a.n);
    doc["digest"] = instance_digest(ins);
    doc["jobs"] = ins.n();
    EventTimeline tl = run_pf(ins, {});
    const Rat srpt = srpt_single_objective(ins);
    doc["pf_objective"] = rat_json(tl.objective);
    doc["srpt_objective"] = rat_json(srpt);
    doc["ratio"] = rat_dbl(tl.objective / srpt);
    doc["target"] = a.family == "rr-simple" ? 2.0746 : 2.1906;
  } else if (a.family == "migration") {
    const Instance ins = gen_migration_lb(a.n);
    doc["digest"] = instance_digest(ins);
    const Rat s1 = ins.model.speeds[0];
    const Rat nR = Rat(a.n);
    // Best schedule confined to the fast machine vs one job per machine.
    const Rat pinned = nR * (nR + 1) / (2 * s1);
    const Rat spread = 1 / s1 + (nR - 1);
    doc["pinned_objective"] = rat_json(pinned);
    doc["spread_objective"] = rat_json(spread);
    doc["ratio"] = rat_dbl(pinned / spread);
    doc["target"] = rat_dbl(nR * (nR + 1) / (2 * (1 + s1 * (nR - 1))));
  } else if (a.family == "nonmonotone") {
    const Instance ins = gen_nonmonotone_counterexample();
    doc["digest"] = instance_digest(ins);
    RateSolution all = solve_eg_unrelated(ins.model.speed_matrix, {Rat(1), Rat(1), Rat(1)}, 1e-10);
    std::vector<std::vector<Rat>> sub(ins.model.m);
    for (int i = 0; i < ins.model.m; ++i)
      sub[i] = {ins.model.speed_matrix[i][0], ins.model.speed_matrix[i][1]};
    RateSolution two = solve_eg_unrelated(sub, {Rat(1), Rat(1)}, 1e-10);
    json y3 = json::array(), y2 = json::array();
    for (const Rat& v : all.y) y3.push_back(rat_dbl(v));
    for (const Rat& v : two.y) y2.push_back(rat_dbl(v));
    doc["rates_all_jobs"] = y3;
    doc["rates_without_job3"] = y2;
    doc["job2_rate_drop"] = {rat_dbl(all.y[1]), rat_dbl(two.y[1])};
    doc["monotone"] = all.y[1] <= two.y[1] + 1e-6;
  } else {
    throw ParseError("unknown family: " + a.family);
  }

  doc["timing"] = {{"total_ms", sw.ms()}};
  doc["result_digest"] = result_digest(doc);
  emit(doc, a.out);
  return 0;
}

struct SweepArgs {
  std::string model = "single", algorithms = "pf", reference = "lp1", out;
  std::string certify_kind, kappa = "2", lambda = "2/3";
  int n_min = 1, n_max = 5, m_min = 1, m_max = 3, d_min = 1, d_max = 3;
  long max_value = 9, max_release = 0;
  bool unit_weights = false, unit_jobs = false;
  int seeds = 10;
  std::uint64_t seed0 = 1;
  double tol = 1e-8;
  unsigned threads = 0;
};

std::string csv_escape(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

int cmd_sweep(const SweepArgs& a) {
  RandomSpec spec;
  bool restricted = false;
  spec.kind = parse_model(a.model, restricted);
  spec.restricted = restricted;
  spec.n_min = a.n_min;
  spec.n_max = a.n_max;
  spec.m_min = a.m_min;
  spec.m_max = a.m_max;
  spec.d_min = a.d_min;
  spec.d_max = a.d_max;
  spec.max_value = a.max_value;
  spec.max_release = a.max_release;
  spec.unit_weights = a.unit_weights;
  spec.unit_jobs = a.unit_jobs;

  std::vector<std::string> algos;
  {
    std::stringstream ss(a.algorithms);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) algos.push_back(tok);
  }
  if (algos.empty()) throw ParseError("no algorithms requested");

  const Rat kappa = rat_from_string(a.kappa);
  const Rat lambda = rat_from_string(a.lambda);

  std::vector<std::vector<std::string>> rows(std::max(a.seeds, 0));

  auto work = [&](int idx) {
    const std::uint64_t seed = a.seed0 + static_cast<std::uint64_t>(idx);
    std::vector<std::string>& out = rows[idx];
    Instance ins;
    std::string digest;
    Rat reference = 0;
    std::string refKind = a.reference;
    std::string refError;
    try {
      ins = random_instance(spec, seed);
      digest = instance_digest(ins);
      if (refKind == "auto") {
        if (ins.model.kind == ModelKind::Single)
          refKind = "srpt";
        else if ((ins.model.kind == ModelKind::Related ||
                  ins.model.kind == ModelKind::Identical) &&
                 uniform_release(ins))
          refKind = "opt0";
        else
          refKind = "lp1";
      }
      if (refKind == "srpt") {
        reference = srpt_single_objective(ins);
      } else if (refKind == "opt0") {
        if (!uniform_release(ins)) throw ParseError("opt0 reference needs a common release");
        std::vector<Rat> p;
        for (const auto& jb : ins.jobs) p.push_back(jb.p);
        std::vector<Rat> speeds(ins.machines());
        for (int i = 0; i < ins.machines(); ++i) speeds[i] = ins.speed(i, 0);
        reference = opt0_related(speeds, p) + ins.jobs[0].r * Rat(ins.n());
      } else if (refKind == "lp1") {
        TimeIndexedLp lp = build_time_indexed(ins, Rat(1));
        const LpSolution sol = simplex_solve(lp.problem);
        if (sol.status != LpStatus::Optimal) throw SolverError("LP(1) not optimal");
        reference = time_indexed_original_value(lp, sol.objective);
      } else if (refKind != "none") {
        throw ParseError("unknown reference: " + refKind);
      }
    } catch (const std::exception& e) {
      refError = e.what();
    }

    for (const std::string& algo : algos) {
      std::ostringstream line;
      line << kResultSchema << "," << seed << ",";
      if (!refError.empty()) {
        line << csv_escape(digest) << "," << a.model << ",,," << algo << ",,,"
             << refKind << ",,,,,," << csv_escape(refError);
        out.push_back(line.str());
        continue;
      }
      line << digest << "," << a.model << "," << ins.n() << "," << ins.machines() << "," << algo
           << ",";
      try {
        EventTimeline tl;
        Schedule sch = run_algorithm(ins, algo, SolverChoice::Auto, a.tol, &tl);
        line << rat_str(sch.objective) << ",";
        if (refKind != "none" && reference > 0)
          line << rat_str(reference) << "," << refKind << "," << rat_dbl(sch.objective / reference);
        else
          line << "," << refKind << ",";
        line << ",";
        if (!a.certify_kind.empty() && algo == "pf") {
          DualCertificate cert;
          const CertificateKind kind = certificate_kind_from_name(a.certify_kind);
          switch (kind) {
            case CertificateKind::MonPsp:
              cert = monpsp_certificate(ins, tl, SolverChoice::Auto, kappa, a.tol);
              break;
            case CertificateKind::Structured:
              cert = structured_certificate(ins, tl);
              break;
            case CertificateKind::GeneralPsp:
              cert = general_psp_certificate(ins, tl, kappa, lambda, a.tol);
              break;
            case CertificateKind::WrrTight:
              cert = wrr_tight_certificate(ins);
              break;
          }
          const CertificateVerdict verdict = verify_certificate(ins, cert, a.tol);
          line << a.certify_kind << "," << (verdict.feasible ? "1" : "0") << ","
               << rat_str(cert.guarantee) << "," << (verdict.ok ? "1" : "0") << ",";
        } else {
          line << ",,,,";
        }
      } catch (const std::exception& e) {
        line << ",,,,,,,," << csv_escape(e.what());
        out.push_back(line.str());
        continue;
      }
      out.push_back(line.str());
    }
  };

  const int total = std::max(a.seeds, 0);
  unsigned nthreads = a.threads ? a.threads : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = std::min<unsigned>(nthreads, std::max(total, 1));
  if (total > 0) {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) work(idx);
      });
    for (auto& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "schema,seed,digest,model,n,m,algorithm,objective,reference,reference_kind,ratio,"
         "cert_kind,cert_feasible,cert_guarantee,cert_ok,error\n";
  for (const auto& seedRows : rows)
    for (const auto& row : seedRows) csv << row << "\n";
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw ParseError("cannot open output file: " + a.out);
    f << csv.str();
  }
  return 0;
}

struct LpArgs {
  std::string instance, form = "time", out;
  std::string kappa = "1";
  double eps = 0.1, delta = 0.1;
};

int cmd_lp(const LpArgs& a) {
  Stopwatch sw;
  ParsedInstance parsed = parse_instance_file(a.instance);
  const Instance& ins = parsed.instance;
  json doc = result_skeleton("lp", ins);
  doc["form"] = a.form;

  if (a.form == "time") {
    const Rat kappa = rat_from_string(a.kappa);
    TimeIndexedLp lp = build_time_indexed(ins, kappa);
    doc["kappa"] = rat_json(kappa);
    doc["scale"] = rat_json(Rat(lp.scale));
    doc["horizon"] = rat_json(Rat(lp.horizon));
    doc["variables"] = lp.problem.nvars;
    doc["rows"] = lp.problem.rows.size();
    const LpSolution sol = simplex_solve(lp.problem);
    if (sol.status != LpStatus::Optimal) throw SolverError("time-indexed LP not optimal");
    const Rat value = time_indexed_original_value(lp, sol.objective);
    doc["optimum"] = rat_json(value);
    doc["optimum_value"] = rat_dbl(value);
    doc["pivots"] = sol.pivots;
  } else if (a.form == "interval") {
    IntervalLp lp = build_interval_indexed(ins, a.eps, a.delta);
    doc["eps"] = a.eps;
    doc["delta"] = a.delta;
    doc["boundaries"] = lp.boundaries.size();
    doc["variables"] = lp.problem.nvars;
    doc["rows"] = lp.problem.rows.size();
    const LpSolution sol = simplex_solve(lp.problem);
    if (sol.status != LpStatus::Optimal) throw SolverError("interval-indexed LP not optimal");
    doc["optimum"] = rat_json(sol.objective);
    doc["optimum_value"] = rat_dbl(sol.objective);
    doc["pivots"] = sol.pivots;
  } else {
    throw ParseError("unknown LP form: " + a.form);
  }

  doc["timing"] = {{"total_ms", sw.ms()}};
  doc["result_digest"] = result_digest(doc);
  emit(doc, a.out);
  return 0;
}

struct RoundArgs {
  std::string instance, out;
  double eps = 0.1, delta = 0.1;
  std::uint64_t seed = 1;
  int samples = 1;
};

int cmd_round(const RoundArgs& a) {
  Stopwatch sw;
  ParsedInstance parsed = parse_instance_file(a.instance);
  const Instance& ins = parsed.instance;
  json doc = result_skeleton("round", ins);
  doc["eps"] = a.eps;
  doc["delta"] = a.delta;
  doc["seed"] = a.seed;
  doc["samples"] = a.samples;

  IntervalLp lp = build_interval_indexed(ins, a.eps, a.delta);
  const LpSolution sol = simplex_solve(lp.problem);
  if (sol.status != LpStatus::Optimal) throw SolverError("interval-indexed LP not optimal");
  doc["lp_optimum"] = rat_json(sol.objective);

  json samples = json::array();
  Rat total = 0;
  bool all_within = true;
  for (int k = 0; k < a.samples; ++k) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(k);
    const RoundedSample rs = alpha_point_round(ins, lp, sol, seed);
    json e;
    e["seed"] = seed;
    e["alpha"] = rat_json(rs.alpha);
    e["objective"] = rat_json(rs.schedule.objective);
    e["per_sample_bound"] = rat_json(rs.cert_bound);
    e["within_bound"] = rs.within_bound;
    samples.push_back(e);
    total += rs.schedule.objective;
    all_within = all_within && rs.within_bound;
  }
  doc["runs"] = samples;
  if (a.samples > 0) doc["mean_objective"] = rat_dbl(total / a.samples);
  doc["all_within_bound"] = all_within;
  doc["timing"] = {{"total_ms", sw.ms()}};
  doc["result_digest"] = result_digest(doc);
  emit(doc, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proportional-fairness scheduling harness"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* cRun = app.add_subcommand("run", "run an algorithm on an instance");
  cRun->add_option("instance", run.instance, "instance JSON file")->required();
  cRun->add_option("--algorithm,-a", run.algorithm, "pf | srpt | spt | wspt");
  cRun->add_option("--solver", run.solver, "auto | packing | related | unrelated");
  cRun->add_option("--tol", run.tol, "solver tolerance");
  cRun->add_option("--seed", run.seed, "recorded in the result document");
  cRun->add_flag("--lp1", run.with_lp1, "also solve the unit-capacity time-indexed LP");
  cRun->add_option("--out", run.out, "write the result document here");

  CertifyArgs cert;
  CLI::App* cCert = app.add_subcommand("certify", "build and verify a dual certificate");
  cCert->add_option("instance", cert.instance, "instance JSON file")->required();
  cCert->add_option("--kind", cert.kind, "monpsp | structured | general | wrr");
  cCert->add_option("--kappa", cert.kappa, "capacity stretch (rational)");
  cCert->add_option("--lambda", cert.lambda, "quantile parameter (rational)");
  cCert->add_option("--solver", cert.solver, "auto | packing | related | unrelated");
  cCert->add_option("--tol", cert.tol, "verification tolerance");
  cCert->add_option("--verify-file", cert.verify_file, "check a stored certificate instead");
  cCert->add_option("--out", cert.out, "write the result document here");

  LowerboundArgs lb;
  CLI::App* cLb = app.add_subcommand("lowerbound", "reproduce an adversarial family");
  cLb->add_option("--family", lb.family, "rr-simple | rr-table | migration | nonmonotone")
      ->required();
  cLb->add_option("--n", lb.n, "family size parameter");
  cLb->add_option("--out", lb.out, "write the result document here");

  SweepArgs sweep;
  CLI::App* cSweep = app.add_subcommand("sweep", "random instances to CSV");
  cSweep->add_option("--model", sweep.model,
                     "single | identical | related | unrelated | restricted | packing");
  cSweep->add_option("--algorithms", sweep.algorithms, "comma-separated: pf,srpt,spt,wspt");
  cSweep->add_option("--reference", sweep.reference, "lp1 | srpt | opt0 | auto | none");
  cSweep->add_option("--certify", sweep.certify_kind, "also certify each run (pf only)");
  cSweep->add_option("--kappa", sweep.kappa, "certificate kappa");
  cSweep->add_option("--lambda", sweep.lambda, "certificate lambda");
  cSweep->add_option("--n-min", sweep.n_min);
  cSweep->add_option("--n-max", sweep.n_max);
  cSweep->add_option("--m-min", sweep.m_min);
  cSweep->add_option("--m-max", sweep.m_max);
  cSweep->add_option("--d-min", sweep.d_min);
  cSweep->add_option("--d-max", sweep.d_max);
  cSweep->add_option("--max-value", sweep.max_value, "largest random integer datum");
  cSweep->add_option("--max-release", sweep.max_release, "largest integer release");
  cSweep->add_flag("--unit-weights", sweep.unit_weights);
  cSweep->add_flag("--unit-jobs", sweep.unit_jobs);
  cSweep->add_option("--seeds", sweep.seeds, "number of seeds");
  cSweep->add_option("--seed0", sweep.seed0, "first seed");
  cSweep->add_option("--threads", sweep.threads, "worker threads (0 = hardware)");
  cSweep->add_option("--tol", sweep.tol, "solver tolerance");
  cSweep->add_option("--out", sweep.out, "CSV path (stdout when absent)");

  LpArgs lp;
  CLI::App* cLp = app.add_subcommand("lp", "solve a relaxation exactly");
  cLp->add_option("instance", lp.instance, "instance JSON file")->required();
  cLp->add_option("--form", lp.form, "time | interval");
  cLp->add_option("--kappa", lp.kappa, "capacity stretch for the time form");
  cLp->add_option("--eps", lp.eps, "geometric grid growth for the interval form");
  cLp->add_option("--delta", lp.delta, "release shift for the interval form");
  cLp->add_option("--out", lp.out, "write the result document here");

  RoundArgs round;
  CLI::App* cRound = app.add_subcommand("round", "alpha-point rounding of the interval LP");
  cRound->add_option("instance", round.instance, "instance JSON file")->required();
  cRound->add_option("--eps", round.eps, "geometric grid growth");
  cRound->add_option("--delta", round.delta, "release shift");
  cRound->add_option("--seed", round.seed, "first sampling seed");
  cRound->add_option("--samples", round.samples, "number of samples");
  cRound->add_option("--out", round.out, "write the result document here");

  try {
    app.parse(argc, argv);
    if (cRun->parsed()) return cmd_run(run);
    if (cCert->parsed()) return cmd_certify(cert);
    if (cLb->parsed()) return cmd_lowerbound(lb);
    if (cSweep->parsed()) return cmd_sweep(sweep);
    if (cLp->parsed()) return cmd_lp(lp);
    if (cRound->parsed()) return cmd_round(round);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
