#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pfsched/model.hpp"
#include "pfsched/rng.hpp"

using namespace pfsched;
using nlohmann::json;

namespace {

Instance single(std::vector<Rat> p, std::vector<Rat> w, std::vector<Rat> r) {
  Instance inst;
  inst.model.kind = ModelKind::Single;
  for (size_t j = 0; j < p.size(); ++j) inst.jobs.push_back({p[j], w[j], r[j]});
  return inst;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(rat_from_string("3") == Rat(3));
  CHECK(rat_from_string("-7/2") == make_rat(-7, 2));
  CHECK(rat_from_string("1.25") == make_rat(5, 4));
  CHECK(rat_from_string(".5") == make_rat(1, 2));
  CHECK(rat_from_string("-0.1") == make_rat(-1, 10));
  CHECK_THROWS_AS(rat_from_string(""), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/"), ParseError);
  CHECK_THROWS_AS(rat_from_string("x"), ParseError);
  CHECK_THROWS_AS(make_rat(1, 0), ParseError);
  CHECK(rat_str(make_rat(4, 2)) == "2");
  CHECK(rat_str(make_rat(-3, 9)) == "-1/3");
}

TEST_CASE("rational helpers") {
  CHECK(floor_rat(make_rat(-3, 2)) == -2);
  CHECK(ceil_rat(make_rat(-3, 2)) == -1);
  CHECK(floor_rat(Rat(4)) == 4);
  CHECK(denominator_lcm({make_rat(1, 4), make_rat(1, 6), Rat(2)}) == 12);
  CHECK(rat_exact(0.5) == make_rat(1, 2));
  CHECK(rat_exact(0.1) != make_rat(1, 10));  // binary expansion, not decimal
}

TEST_CASE("instance json round trip") {
  json doc = {
      {"model", "packing"},
      {"B", {{1, "1/2"}, {0, 1}}},
      {"jobs", {{{"p", 2}, {"w", 1}, {"r", 0}}, {{"p", "3/2"}, {"w", 2}, {"r", "1/2"}}}},
  };
  auto parsed = parse_instance(doc);
  const Instance& inst = parsed.instance;
  CHECK(inst.model.kind == ModelKind::Packing);
  CHECK(inst.n() == 2);
  CHECK(inst.model.rows[0][1] == make_rat(1, 2));
  CHECK(inst.jobs[1].p == make_rat(3, 2));
  CHECK(inst.jobs[1].r == make_rat(1, 2));

  auto back = parse_instance(instance_to_json(inst));
  CHECK(instance_to_json(back.instance) == instance_to_json(inst));
  CHECK(instance_digest(back.instance) == instance_digest(inst));
}

TEST_CASE("instance digest distinguishes instances") {
  auto a = single({Rat(1), Rat(2)}, {Rat(1), Rat(1)}, {Rat(0), Rat(0)});
  auto b = single({Rat(1), Rat(2)}, {Rat(1), Rat(2)}, {Rat(0), Rat(0)});
  CHECK(instance_digest(a).substr(0, 6) == "fnv1a:");
  CHECK(instance_digest(a) != instance_digest(b));
}

TEST_CASE("floats in instance json are rejected") {
  json doc = {{"model", "single"}, {"jobs", {{{"p", 1.5}, {"w", 1}, {"r", 0}}}}};
  CHECK_THROWS_AS(parse_instance(doc), ParseError);
}

TEST_CASE("validation rejects malformed instances") {
  SUBCASE("nonpositive processing") {
    auto inst = single({Rat(0)}, {Rat(1)}, {Rat(0)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
  SUBCASE("nonpositive weight") {
    auto inst = single({Rat(1)}, {Rat(-1)}, {Rat(0)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
  SUBCASE("negative release") {
    auto inst = single({Rat(1)}, {Rat(1)}, {Rat(-1)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
  SUBCASE("related speeds must be sorted") {
    Instance inst;
    inst.model.kind = ModelKind::Related;
    inst.model.m = 2;
    inst.model.speeds = {Rat(1), Rat(2)};
    inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
  SUBCASE("unschedulable job") {
    Instance inst;
    inst.model.kind = ModelKind::Unrelated;
    inst.model.m = 1;
    inst.model.speed_matrix = {{Rat(0)}};
    inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
  SUBCASE("row dimension mismatch") {
    Instance inst;
    inst.model.kind = ModelKind::Packing;
    inst.model.rows = {{Rat(1)}};
    inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
    inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
    CHECK_THROWS_AS(validate_instance(inst), ParseError);
  }
}

TEST_CASE("zero-processing jobs are stripped with a warning") {
  json doc = {{"model", "single"},
              {"jobs",
               {{{"p", 1}, {"w", 1}, {"r", 0}},
                {{"p", 0}, {"w", 5}, {"r", 0}},
                {{"p", 2}, {"w", 1}, {"r", 1}}}}};
  auto parsed = parse_instance(doc);
  CHECK(parsed.instance.n() == 2);
  CHECK(parsed.warnings.size() == 1);
  CHECK(parsed.instance.jobs[1].p == Rat(2));
}

TEST_CASE("unified speed view") {
  Instance ident;
  ident.model.kind = ModelKind::Identical;
  ident.model.m = 2;
  ident.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  CHECK(ident.speed(0, 0) == Rat(1));
  CHECK(ident.speed(1, 0) == Rat(1));

  Instance rel;
  rel.model.kind = ModelKind::Related;
  rel.model.m = 2;
  rel.model.speeds = {Rat(3), Rat(1)};
  rel.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  CHECK(rel.speed(0, 0) == Rat(3));
  CHECK(rel.speed(1, 0) == Rat(1));
  CHECK(rel.assignment_kind());

  auto sgl = single({Rat(1)}, {Rat(1)}, {Rat(0)});
  CHECK_FALSE(sgl.assignment_kind());
}

TEST_CASE("model kind names round trip") {
  for (auto k : {ModelKind::Single, ModelKind::Identical, ModelKind::Related,
                 ModelKind::Unrelated, ModelKind::Packing}) {
    CHECK(model_kind_from_name(model_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(model_kind_from_name("banana"), ParseError);
}

TEST_CASE("schedule feasibility checker") {
  auto inst = single({Rat(1), Rat(2)}, {Rat(1), Rat(1)}, {Rat(0), Rat(0)});
  Schedule sched;
  sched.pieces.push_back({Rat(0), Rat(1), {Rat(1), Rat(0)}, {}});
  sched.pieces.push_back({Rat(1), Rat(3), {Rat(0), Rat(1)}, {}});
  sched.completion = {Rat(1), Rat(3)};
  sched.objective = Rat(4);
  auto rep = check_schedule(inst, sched, 1e-9);
  CHECK(rep.ok);

  SUBCASE("over capacity") {
    sched.pieces[0].y = {Rat(1), Rat(1)};
    auto bad = check_schedule(inst, sched, 1e-9);
    CHECK_FALSE(bad.ok);
    CHECK(bad.max_violation > 0.5);
  }
  SUBCASE("work shortfall") {
    sched.pieces[1].t1 = Rat(2);
    sched.completion[1] = Rat(2);
    auto bad = check_schedule(inst, sched, 1e-9);
    CHECK_FALSE(bad.ok);
  }
  SUBCASE("running before release") {
    inst.jobs[0].r = make_rat(1, 2);
    auto bad = check_schedule(inst, sched, 1e-9);
    CHECK_FALSE(bad.ok);
  }
}

TEST_CASE("rate feasibility for machine kinds") {
  Instance inst;
  inst.model.kind = ModelKind::Unrelated;
  inst.model.m = 2;
  inst.model.speed_matrix = {{Rat(1), Rat(2)}, {Rat(1), Rat(0)}};
  inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});

  std::vector<std::vector<Rat>> x = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(check_rates(inst, {Rat(1), Rat(2)}, x, 1e-9).ok);

  x[0][0] = Rat(1);  // machine 0 now over-allocated
  CHECK_FALSE(check_rates(inst, {Rat(2), Rat(2)}, x, 1e-9).ok);
}

TEST_CASE("sqrt3 constant") {
  Rat err = kSqrt3 * kSqrt3 - 3;
  CHECK(rat_abs(err) < make_rat(1, 100000000000000L));  // 16 digits keeps err ~1e-16
  CHECK(kSqrt3 > make_rat(17, 10));
  CHECK(kSqrt3 < make_rat(18, 10));
}

TEST_CASE("round robin family, simple") {
  auto inst = gen_rr_lb_simple(4);
  REQUIRE(inst.n() == 8);
  CHECK(inst.model.kind == ModelKind::Single);
  for (int j = 0; j < 4; ++j) {
    CHECK(inst.jobs[j].p == Rat(1));
    CHECK(inst.jobs[j].r == Rat(0));
  }
  Rat p2 = inst.jobs[4].p, r2 = inst.jobs[4].r;
  for (int j = 5; j < 8; ++j) {
    CHECK(inst.jobs[j].p == p2);
    CHECK(inst.jobs[j].r == r2);
  }
  // the release is scaled by n: round-robin at rate 1/n reaches remaining
  // sqrt(3)-1 on the first wave exactly when the second wave arrives
  CHECK(p2 == kSqrt3 - 1);
  CHECK(r2 == Rat(4) * (2 - kSqrt3));
  validate_instance(inst);
}

TEST_CASE("round robin family, tabulated") {
  auto inst = gen_rr_lb_table(3);
  CHECK(inst.model.kind == ModelKind::Single);
  CHECK(inst.n() == 30 * 3);
  validate_instance(inst);
  // wave 0 jobs are the longest; sizes strictly decrease wave over wave
  for (int wave = 1; wave < 30; ++wave) {
    CHECK(inst.jobs[wave * 3].p < inst.jobs[(wave - 1) * 3].p);
    CHECK(inst.jobs[wave * 3].r >= inst.jobs[(wave - 1) * 3].r);
  }
}

TEST_CASE("migration family") {
  auto inst = gen_migration_lb(9);
  CHECK(inst.model.kind == ModelKind::Related);
  CHECK(inst.n() == 9);
  CHECK(inst.model.speeds[0] == Rat(3));
  for (int i = 1; i < 9; ++i) CHECK(inst.model.speeds[i] == Rat(1));
  CHECK_THROWS_AS(gen_migration_lb(10), ParseError);
}

TEST_CASE("nonmonotone family shape") {
  auto inst = gen_nonmonotone_counterexample();
  CHECK(inst.model.kind == ModelKind::Unrelated);
  CHECK(inst.n() == 3);
  CHECK(inst.model.m == 3);
  CHECK(inst.model.speed_matrix[0][1] == Rat(2));
  CHECK(inst.model.speed_matrix[2][2] == Rat(1));
  validate_instance(inst);
}

TEST_CASE("random instances are deterministic and valid") {
  RandomSpec spec;
  spec.kind = ModelKind::Related;
  spec.n_max = 6;
  spec.m_max = 3;
  spec.max_release = 4;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto a = random_instance(spec, seed);
    auto b = random_instance(spec, seed);
    CHECK(instance_digest(a) == instance_digest(b));
    validate_instance(a);
    CHECK(a.n() >= spec.n_min);
    CHECK(a.n() <= spec.n_max);
  }

  spec.kind = ModelKind::Unrelated;
  spec.restricted = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = random_instance(spec, seed);
    validate_instance(inst);
    for (const auto& row : inst.model.speed_matrix)
      for (const auto& s : row) CHECK((s == 0 || s == 1));
  }

  spec.kind = ModelKind::Packing;
  spec.restricted = false;
  for (std::uint64_t seed = 0; seed < 30; ++seed) validate_instance(random_instance(spec, seed));
}

TEST_CASE("rng grid draws stay on the grid") {
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    Rat v = rng.rat_grid(1, 4, 6);
    CHECK(v >= 1);
    CHECK(v <= 4);
    CHECK(Int(v.get_den()) <= 6);
  }
}
