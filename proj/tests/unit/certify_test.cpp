#include <doctest.h>

#include <string>

#include "pfsched/certify.hpp"

using namespace pfsched;

namespace {

Instance pooled_related() {
  Instance inst;
  inst.model.kind = ModelKind::Related;
  inst.model.m = 2;
  inst.model.speeds = {Rat(2), Rat(1)};
  inst.jobs.push_back({Rat(3), Rat(1), Rat(0)});
  inst.jobs.push_back({Rat(3), Rat(1), Rat(0)});
  return inst;
}

Instance two_jobs() {
  Instance inst;
  inst.model.kind = ModelKind::Single;
  inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  inst.jobs.push_back({Rat(2), Rat(1), Rat(0)});
  return inst;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (auto k : {CertificateKind::MonPsp, CertificateKind::Structured, CertificateKind::GeneralPsp,
                 CertificateKind::WrrTight}) {
    CHECK(certificate_kind_from_name(certificate_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(certificate_kind_from_name("nope"), ParseError);
}

TEST_CASE("structured certificate halves the objective") {
  auto inst = pooled_related();
  auto tl = run_pf(inst);
  auto cert = structured_certificate(inst, tl);
  CHECK(cert.kind == CertificateKind::Structured);
  CHECK(cert.guarantee == Rat(2));
  CHECK(cert.alg_scaled == Rat(4));
  CHECK(cert.dual_objective == Rat(2));
  CHECK(structured_tightness_gap(inst, cert) == Rat(0));

  auto verdict = verify_certificate(inst, cert, 1e-9);
  CHECK(verdict.ok);
  CHECK(verdict.feasible);
  CHECK(verdict.identity_residual == Rat(0));
  CHECK(verdict.note.find("ALG <= ") != std::string::npos);
}

TEST_CASE("structured certificate requires a single interval") {
  auto inst = two_jobs();  // two completion events
  auto tl = run_pf(inst);
  CHECK_THROWS_AS(structured_certificate(inst, tl), SolverError);
}

TEST_CASE("monotone certificate on a structured run") {
  auto inst = pooled_related();
  auto tl = run_pf(inst);
  auto cert = monpsp_certificate(inst, tl, SolverChoice::Auto, Rat(2), 1e-9);
  CHECK(cert.kappa == Rat(2));
  CHECK(cert.guarantee == Rat(4));  // kappa^2/(kappa-1)
  CHECK(cert.alg_scaled == Rat(4));
  CHECK(cert.dual_objective == Rat(2));  // (1 - 1/kappa) * alg
  auto verdict = verify_certificate(inst, cert, 1e-9);
  CHECK(verdict.ok);
}

TEST_CASE("monotone certificate tracks releases") {
  Instance inst;
  inst.model.kind = ModelKind::Related;
  inst.model.m = 2;
  inst.model.speeds = {Rat(2), Rat(1)};
  inst.jobs.push_back({Rat(2), Rat(1), Rat(0)});
  inst.jobs.push_back({Rat(2), Rat(2), Rat(1)});
  inst.jobs.push_back({Rat(1), Rat(1), Rat(2)});
  auto tl = run_pf(inst);
  auto cert = monpsp_certificate(inst, tl, SolverChoice::Auto, Rat(2), 1e-9);
  auto verdict = verify_certificate(inst, cert, 1e-9);
  CHECK(verdict.ok);
  CHECK(verdict.ratio == Rat(4));

  CHECK_THROWS_AS(monpsp_certificate(inst, tl, SolverChoice::Auto, Rat(1), 1e-9), ParseError);
}

TEST_CASE("monotonicity gate rejects the chain instance") {
  auto inst = gen_nonmonotone_counterexample();
  inst.jobs[2].r = make_rat(1, 2);  // job 3 arrives late; rates for job 2 then drop
  auto tl = run_pf(inst);
  try {
    monpsp_certificate(inst, tl, SolverChoice::Auto, Rat(2), 1e-7);
    FAIL("expected the monotonicity gate to fire");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("monotonicity") != std::string::npos);
  }
}

TEST_CASE("quantile certificate at the published operating point") {
  auto inst = two_jobs();
  auto tl = run_pf(inst);
  auto cert = general_psp_certificate(inst, tl, Rat(9), make_rat(2, 3), 1e-9);
  CHECK(cert.kind == CertificateKind::GeneralPsp);
  CHECK(cert.guarantee == Rat(27));
  auto verdict = verify_certificate(inst, cert, 1e-9);
  CHECK(verdict.ok);
  CHECK(verdict.feasible);

  SUBCASE("margin must be positive") {
    CHECK_THROWS_AS(general_psp_certificate(inst, tl, Rat(1), make_rat(1, 2), 1e-9), ParseError);
    CHECK_THROWS_AS(general_psp_certificate(inst, tl, Rat(9), Rat(1), 1e-9), ParseError);
  }
  SUBCASE("no packing rows for unrelated machines") {
    auto chain = gen_nonmonotone_counterexample();
    auto ctl = run_pf(chain);
    CHECK_THROWS_AS(general_psp_certificate(chain, ctl, Rat(9), make_rat(2, 3), 1e-9),
                    SolverError);
  }
}

TEST_CASE("quantile certificate pools identical machines") {
  Instance inst;
  inst.model.kind = ModelKind::Identical;
  inst.model.m = 2;
  inst.jobs.push_back({Rat(1), Rat(2), Rat(0)});
  inst.jobs.push_back({Rat(2), Rat(1), Rat(1)});
  inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  auto tl = run_pf(inst);
  auto cert = general_psp_certificate(inst, tl, Rat(9), make_rat(2, 3), 1e-9);
  auto verdict = verify_certificate(inst, cert, 1e-9);
  CHECK(verdict.ok);
  CHECK(verdict.dual_objective >= make_rat(1, 3) * cert.alg_scaled);
}

TEST_CASE("round-robin certificate in closed form") {
  SUBCASE("one unit job") {
    Instance inst;
    inst.model.kind = ModelKind::Single;
    inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
    auto cert = wrr_tight_certificate(inst);
    CHECK(cert.alg_scaled == Rat(1));
    CHECK(cert.dual_objective == make_rat(1, 2));
    CHECK(verify_certificate(inst, cert, 1e-12).ok);
  }
  SUBCASE("two unit jobs") {
    auto inst = two_jobs();
    inst.jobs[1].p = Rat(1);
    auto cert = wrr_tight_certificate(inst);
    CHECK(cert.alg_scaled == Rat(4));  // both complete at 2
    CHECK(cert.dual_objective == Rat(2));
    CHECK(verify_certificate(inst, cert, 1e-12).ok);
  }
  SUBCASE("fractional weights rescale away") {
    Instance inst;
    inst.model.kind = ModelKind::Single;
    inst.jobs.push_back({Rat(2), make_rat(1, 3), Rat(0)});
    inst.jobs.push_back({Rat(1), make_rat(1, 2), Rat(0)});
    auto cert = wrr_tight_certificate(inst);
    CHECK(cert.weight_scale == 6);
    auto verdict = verify_certificate(inst, cert, 1e-12);
    CHECK(verdict.ok);
    CHECK(verdict.identity_residual == Rat(0));
  }
  SUBCASE("release dates are out of scope") {
    Instance inst;
    inst.model.kind = ModelKind::Single;
    inst.jobs.push_back({Rat(1), Rat(1), Rat(1)});
    CHECK_THROWS_AS(wrr_tight_certificate(inst), SolverError);
  }
}

TEST_CASE("verification rejects tampered tables") {
  auto inst = pooled_related();
  auto tl = run_pf(inst);
  auto cert = structured_certificate(inst, tl);

  SUBCASE("shrunken beta rows break feasibility") {
    auto bad = cert;
    for (auto& row : bad.tables.beta)
      for (auto& seg : row) {
        seg.c0 *= make_rat(3, 4);
        seg.c1 *= make_rat(3, 4);
      }
    bad.dual_objective = bad.tables.alpha[0] + bad.tables.alpha[1];
    for (const auto& row : bad.tables.beta) bad.dual_objective -= beta_row_total(row);
    auto verdict = verify_certificate(inst, bad, 1e-9);
    CHECK_FALSE(verdict.ok);
    CHECK_FALSE(verdict.feasible);
    CHECK(verdict.note.find("infeasible at") != std::string::npos);
    CHECK(verdict.worst.job >= 0);
  }
  SUBCASE("inflated alpha breaks the identity") {
    auto bad = cert;
    bad.tables.alpha[0] += 1;
    bad.dual_objective += 1;
    auto verdict = verify_certificate(inst, bad, 1e-9);
    CHECK_FALSE(verdict.ok);
  }
  SUBCASE("negative alpha is rejected outright") {
    auto bad = cert;
    bad.tables.alpha[0] = Rat(-1);
    auto verdict = verify_certificate(inst, bad, 1e-9);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.note.find("negative alpha") != std::string::npos);
  }
  SUBCASE("stored objective must match the tables") {
    auto bad = cert;
    bad.dual_objective += make_rat(1, 100);
    auto verdict = verify_certificate(inst, bad, 1e-9);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.note.find("stored dual objective") != std::string::npos);
  }
}
