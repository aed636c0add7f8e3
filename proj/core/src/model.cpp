#include "pfsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pfsched/rng.hpp"

namespace pfsched {

using nlohmann::json;

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Single: return "single";
    case ModelKind::Identical: return "identical";
    case ModelKind::Related: return "related";
    case ModelKind::Unrelated: return "unrelated";
    case ModelKind::Packing: return "packing";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "single") return ModelKind::Single;
  if (name == "identical") return ModelKind::Identical;
  if (name == "related") return ModelKind::Related;
  if (name == "unrelated") return ModelKind::Unrelated;
  if (name == "packing") return ModelKind::Packing;
  throw ParseError("unknown model kind: " + name);
}

int Instance::machines() const {
  switch (model.kind) {
    case ModelKind::Single: return 1;
    case ModelKind::Packing: return 0;
    default: return model.m;
  }
}

Rat Instance::speed(int i, int j) const {
  switch (model.kind) {
    case ModelKind::Single:
    case ModelKind::Identical: return 1;
    case ModelKind::Related: return model.speeds[i];
    case ModelKind::Unrelated: return model.speed_matrix[i][j];
    case ModelKind::Packing: break;
  }
  throw SolverError("speed() on packing model");
}

Rat Instance::total_weight() const {
  Rat w = 0;
  for (const auto& jb : jobs) w += jb.w;
  return w;
}

void validate_instance(const Instance& inst) {
  const int n = inst.n();
  if (n == 0) throw ParseError("instance has no jobs");
  for (int j = 0; j < n; ++j) {
    if (inst.jobs[j].p <= 0) throw ParseError("job " + std::to_string(j) + " has nonpositive processing time");
    if (inst.jobs[j].w <= 0) throw ParseError("job " + std::to_string(j) + " has nonpositive weight");
    if (inst.jobs[j].r < 0) throw ParseError("job " + std::to_string(j) + " has negative release");
  }
  const auto& pm = inst.model;
  switch (pm.kind) {
    case ModelKind::Single:
      if (pm.m != 1) throw ParseError("single-machine model with m != 1");
      break;
    case ModelKind::Identical:
      if (pm.m < 1) throw ParseError("identical model needs m >= 1");
      break;
    case ModelKind::Related: {
      if (pm.m < 1 || static_cast<int>(pm.speeds.size()) != pm.m)
        throw ParseError("related model: speeds size must equal m");
      for (int i = 0; i < pm.m; ++i) {
        if (pm.speeds[i] < 0) throw ParseError("related model: negative speed");
        if (i > 0 && pm.speeds[i] > pm.speeds[i - 1])
          throw ParseError("related model: speeds must be non-increasing");
      }
      if (pm.speeds[0] <= 0) throw ParseError("related model: no positive speed");
      break;
    }
    case ModelKind::Unrelated: {
      if (pm.m < 1 || static_cast<int>(pm.speed_matrix.size()) != pm.m)
        throw ParseError("unrelated model: speed_matrix must have m rows");
      for (const auto& row : pm.speed_matrix)
        if (static_cast<int>(row.size()) != n)
          throw ParseError("unrelated model: speed_matrix row length must equal job count");
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (int i = 0; i < pm.m; ++i) {
          if (pm.speed_matrix[i][j] < 0) throw ParseError("unrelated model: negative speed");
          any = any || pm.speed_matrix[i][j] > 0;
        }
        if (!any) throw ParseError("unrelated model: job " + std::to_string(j) + " runs on no machine");
      }
      break;
    }
    case ModelKind::Packing: {
      if (pm.rows.empty()) throw ParseError("packing model: needs at least one row");
      for (const auto& row : pm.rows) {
        if (static_cast<int>(row.size()) != n)
          throw ParseError("packing model: row length must equal job count");
        bool any = false;
        for (const auto& b : row) {
          if (b < 0) throw ParseError("packing model: negative coefficient");
          any = any || b > 0;
        }
        if (!any) throw ParseError("packing model: all-zero row");
      }
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (const auto& row : pm.rows) any = any || row[j] > 0;
        if (!any) throw ParseError("packing model: job " + std::to_string(j) + " uses no resource");
      }
      break;
    }
  }
}

Rat rat_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_float())
    throw ParseError(where + ": write non-integer rationals as strings (\"a/b\" or decimal)");
  throw ParseError(where + ": expected integer or rational string");
}

json rat_json(const Rat& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(rat_str(q));
}

namespace {

std::vector<Rat> rat_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected array");
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(rat_from_json(e, where));
  return out;
}

std::vector<std::vector<Rat>> rat_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ParseError(where + ": expected non-empty array of arrays");
  std::vector<std::vector<Rat>> out;
  for (const auto& row : v) out.push_back(rat_vector(row, where));
  return out;
}

}  // namespace

ParsedInstance parse_instance(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  if (!doc.contains("model")) throw ParseError("instance missing \"model\"");
  if (!doc.contains("jobs")) throw ParseError("instance missing \"jobs\"");

  ParsedInstance out;
  Instance& inst = out.instance;
  inst.model.kind = model_kind_from_name(doc.at("model").get<std::string>());

  const json& jj = doc.at("jobs");
  if (!jj.is_array() || jj.empty()) throw ParseError("\"jobs\" must be a non-empty array");
  std::vector<Job> raw;
  for (std::size_t k = 0; k < jj.size(); ++k) {
    const json& e = jj[k];
    if (!e.is_object() || !e.contains("p") || !e.contains("w"))
      throw ParseError("job " + std::to_string(k) + ": need fields p and w");
    Job job;
    job.p = rat_from_json(e.at("p"), "job p");
    job.w = rat_from_json(e.at("w"), "job w");
    job.r = e.contains("r") ? rat_from_json(e.at("r"), "job r") : Rat(0);
    raw.push_back(job);
  }

  std::vector<int> keep;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].p == 0) {
      out.warnings.push_back("job " + std::to_string(k) +
                             " has zero processing time; stripped (completes at its release)");
    } else {
      keep.push_back(static_cast<int>(k));
      inst.jobs.push_back(raw[k]);
    }
  }

  auto keep_columns = [&](const std::vector<std::vector<Rat>>& rows) {
    std::vector<std::vector<Rat>> outr;
    for (const auto& row : rows) {
      if (row.size() != raw.size())
        throw ParseError("matrix row length must equal job count (before stripping)");
      std::vector<Rat> r2;
      r2.reserve(keep.size());
      for (int j : keep) r2.push_back(row[j]);
      outr.push_back(std::move(r2));
    }
    return outr;
  };

  switch (inst.model.kind) {
    case ModelKind::Single:
      inst.model.m = 1;
      break;
    case ModelKind::Identical:
      if (!doc.contains("m")) throw ParseError("identical model needs \"m\"");
      inst.model.m = doc.at("m").get<int>();
      break;
    case ModelKind::Related: {
      if (!doc.contains("speeds")) throw ParseError("related model needs \"speeds\"");
      inst.model.speeds = rat_vector(doc.at("speeds"), "speeds");
      inst.model.m = doc.contains("m") ? doc.at("m").get<int>()
                                       : static_cast<int>(inst.model.speeds.size());
      break;
    }
    case ModelKind::Unrelated: {
      if (!doc.contains("speed_matrix")) throw ParseError("unrelated model needs \"speed_matrix\"");
      inst.model.speed_matrix = keep_columns(rat_matrix(doc.at("speed_matrix"), "speed_matrix"));
      inst.model.m = doc.contains("m") ? doc.at("m").get<int>()
                                       : static_cast<int>(inst.model.speed_matrix.size());
      break;
    }
    case ModelKind::Packing: {
      if (!doc.contains("B")) throw ParseError("packing model needs \"B\"");
      inst.model.rows = keep_columns(rat_matrix(doc.at("B"), "B"));
      break;
    }
  }

  validate_instance(inst);
  return out;
}

ParsedInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_instance(doc);
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["model"] = model_kind_name(inst.model.kind);
  json jobs = json::array();
  for (const auto& jb : inst.jobs) {
    json e;
    e["p"] = rat_json(jb.p);
    e["w"] = rat_json(jb.w);
    e["r"] = rat_json(jb.r);
    jobs.push_back(e);
  }
  doc["jobs"] = jobs;
  auto matrix_json = [](const std::vector<std::vector<Rat>>& rows) {
    json m = json::array();
    for (const auto& row : rows) {
      json r = json::array();
      for (const auto& v : row) r.push_back(rat_json(v));
      m.push_back(r);
    }
    return m;
  };
  switch (inst.model.kind) {
    case ModelKind::Single: break;
    case ModelKind::Identical: doc["m"] = inst.model.m; break;
    case ModelKind::Related: {
      doc["m"] = inst.model.m;
      json s = json::array();
      for (const auto& v : inst.model.speeds) s.push_back(rat_json(v));
      doc["speeds"] = s;
      break;
    }
    case ModelKind::Unrelated:
      doc["m"] = inst.model.m;
      doc["speed_matrix"] = matrix_json(inst.model.speed_matrix);
      break;
    case ModelKind::Packing: doc["B"] = matrix_json(inst.model.rows); break;
  }
  return doc;
}

std::string instance_digest(const Instance& inst) {
  std::string bytes = instance_to_json(inst).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rat weighted_completion_objective(const Instance& inst, const std::vector<Rat>& completion) {
  Rat obj = 0;
  for (int j = 0; j < inst.n(); ++j) obj += inst.jobs[j].w * completion[j];
  return obj;
}

namespace {

void bump(FeasibilityReport& rep, const Rat& violation, const std::string& what) {
  double v = rat_dbl(violation);
  if (v > rep.max_violation) {
    rep.max_violation = v;
    rep.detail = what;
  }
}

}  // namespace

FeasibilityReport check_rates(const Instance& inst, const std::vector<Rat>& y,
                              const std::vector<std::vector<Rat>>& x, double tol) {
  FeasibilityReport rep;
  const int n = inst.n();
  for (int j = 0; j < n; ++j)
    if (y[j] < 0) bump(rep, -y[j], "negative rate, job " + std::to_string(j));

  switch (inst.model.kind) {
    case ModelKind::Packing: {
      for (std::size_t d = 0; d < inst.model.rows.size(); ++d) {
        Rat load = 0;
        for (int j = 0; j < n; ++j) load += inst.model.rows[d][j] * y[j];
        if (load > 1) bump(rep, load - 1, "packing row " + std::to_string(d));
      }
      break;
    }
    case ModelKind::Single: {
      Rat load = 0;
      for (int j = 0; j < n; ++j) load += y[j];
      if (load > 1) bump(rep, load - 1, "machine capacity");
      break;
    }
    case ModelKind::Identical:
    case ModelKind::Related: {
      // Polymatroid membership: top-k rates against top-k speeds.
      std::vector<Rat> sorted = y;
      std::sort(sorted.begin(), sorted.end(), std::greater<Rat>());
      Rat ysum = 0, ssum = 0;
      for (int k = 0; k < n; ++k) {
        ysum += sorted[k];
        if (k < inst.model.m)
          ssum += inst.model.kind == ModelKind::Identical ? Rat(1) : inst.model.speeds[k];
        if (ysum > ssum) bump(rep, ysum - ssum, "speed prefix k=" + std::to_string(k + 1));
      }
      break;
    }
    case ModelKind::Unrelated: {
      if (x.empty()) {
        rep.ok = false;
        rep.detail = "unrelated rate check needs an assignment witness";
        rep.max_violation = 1.0;
        return rep;
      }
      const int m = inst.model.m;
      for (int i = 0; i < m; ++i) {
        Rat row = 0;
        for (int j = 0; j < n; ++j) {
          if (x[i][j] < 0) bump(rep, -x[i][j], "negative assignment entry");
          row += x[i][j];
        }
        if (row > 1) bump(rep, row - 1, "machine row " + std::to_string(i));
      }
      for (int j = 0; j < n; ++j) {
        Rat col = 0, rate = 0;
        for (int i = 0; i < m; ++i) {
          col += x[i][j];
          rate += inst.model.speed_matrix[i][j] * x[i][j];
        }
        if (col > 1) bump(rep, col - 1, "job column " + std::to_string(j));
        bump(rep, rat_abs(rate - y[j]), "witness rate mismatch, job " + std::to_string(j));
      }
      break;
    }
  }
  rep.ok = rep.max_violation <= tol;
  return rep;
}

FeasibilityReport check_schedule(const Instance& inst, const Schedule& sched, double tol) {
  FeasibilityReport rep;
  const int n = inst.n();
  std::vector<Rat> done(n, 0);
  Rat prev_end = sched.pieces.empty() ? Rat(0) : sched.pieces.front().t0;
  for (const auto& piece : sched.pieces) {
    if (piece.t0 != prev_end) {
      rep.ok = false;
      rep.detail = "pieces not contiguous";
      return rep;
    }
    if (piece.t1 <= piece.t0) {
      rep.ok = false;
      rep.detail = "empty piece";
      return rep;
    }
    prev_end = piece.t1;
    auto r = check_rates(inst, piece.y, piece.x, tol);
    if (r.max_violation > rep.max_violation) {
      rep.max_violation = r.max_violation;
      rep.detail = r.detail;
    }
    if (!r.ok && r.detail == "unrelated rate check needs an assignment witness") return r;
    Rat len = piece.t1 - piece.t0;
    for (int j = 0; j < n; ++j) {
      // No processing before release.
      if (piece.y[j] > 0 && piece.t0 < inst.jobs[j].r)
        bump(rep, piece.y[j], "processed before release, job " + std::to_string(j));
      done[j] += piece.y[j] * len;
    }
  }
  for (int j = 0; j < n; ++j)
    bump(rep, rat_abs(done[j] - inst.jobs[j].p), "processed volume, job " + std::to_string(j));
  bump(rep, rat_abs(weighted_completion_objective(inst, sched.completion) - sched.objective),
       "objective mismatch");
  rep.ok = rep.max_violation <= tol;
  return rep;
}

const Rat kSqrt3 = make_rat(Int("17320508075688773"), Int("10000000000000000"));

Instance gen_rr_lb_simple(int n) {
  if (n < 1) throw ParseError("gen_rr_lb_simple: n >= 1");
  Instance inst;
  inst.model.kind = ModelKind::Single;
  Rat r2 = (Rat(2) - kSqrt3) * n;
  for (int k = 0; k < n; ++k) inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  for (int k = 0; k < n; ++k) inst.jobs.push_back({kSqrt3 - 1, Rat(1), r2});
  return inst;
}

Instance gen_rr_lb_table(int n) {
  if (n < 1) throw ParseError("gen_rr_lb_table: n >= 1");
  static const long kNum[30] = {100000, 95160, 90702, 86581, 82759, 79203, 75885, 72782,
                                69872,  67137, 64561, 62131, 59832, 57656, 55590, 53628,
                                51760,  49980, 48282, 46659, 45106, 43619, 42194, 40825,
                                39510,  38245, 37027, 35854, 34722, 33630};
  Instance inst;
  inst.model.kind = ModelKind::Single;
  // Wave i joins when waves 1..i-1, sharing the machine round-robin, have run
  // down to per-job remaining p_i; that forces the (i-1) factor below.
  Rat r = 0;
  Rat prev_p = 0;
  for (int i = 0; i < 30; ++i) {
    Rat p = make_rat(kNum[i], 100000);
    if (i > 0) r += Rat(i) * (prev_p - p) * n;
    for (int k = 0; k < n; ++k) inst.jobs.push_back({p, Rat(1), r});
    prev_p = p;
  }
  return inst;
}

Instance gen_nonmonotone_counterexample() {
  Instance inst;
  inst.model.kind = ModelKind::Unrelated;
  inst.model.m = 3;
  inst.model.speed_matrix = {{Rat(1), Rat(2), Rat(0)},
                             {Rat(0), Rat(1), Rat(2)},
                             {Rat(0), Rat(0), Rat(1)}};
  for (int j = 0; j < 3; ++j) inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  return inst;
}

Instance gen_migration_lb(int n) {
  if (n < 4) throw ParseError("gen_migration_lb: n >= 4");
  long root = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) throw ParseError("gen_migration_lb: n must be a perfect square");
  Instance inst;
  inst.model.kind = ModelKind::Related;
  inst.model.m = n;
  inst.model.speeds.assign(n, Rat(1));
  inst.model.speeds[0] = Rat(root);
  for (int j = 0; j < n; ++j) inst.jobs.push_back({Rat(1), Rat(1), Rat(0)});
  return inst;
}

Instance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.model.kind = spec.kind;
  int n = static_cast<int>(rng.int_in(spec.n_min, spec.n_max));
  int m = static_cast<int>(rng.int_in(spec.m_min, spec.m_max));
  auto value = [&]() { return Rat(static_cast<long>(rng.int_in(1, spec.max_value))); };
  switch (spec.kind) {
    case ModelKind::Single: inst.model.m = 1; break;
    case ModelKind::Identical: inst.model.m = m; break;
    case ModelKind::Related: {
      inst.model.m = m;
      for (int i = 0; i < m; ++i) inst.model.speeds.push_back(value());
      std::sort(inst.model.speeds.begin(), inst.model.speeds.end(), std::greater<Rat>());
      break;
    }
    case ModelKind::Unrelated: {
      inst.model.m = m;
      inst.model.speed_matrix.assign(m, std::vector<Rat>(n, Rat(0)));
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (int i = 0; i < m; ++i) {
          long v = spec.restricted ? rng.int_in(0, 1)
                                   : rng.int_in(0, spec.max_value);
          inst.model.speed_matrix[i][j] = Rat(static_cast<long>(v));
          any = any || v > 0;
        }
        if (!any) {
          int i = static_cast<int>(rng.below(m));
          inst.model.speed_matrix[i][j] = spec.restricted ? Rat(1) : value();
        }
      }
      break;
    }
    case ModelKind::Packing: {
      int d = static_cast<int>(rng.int_in(spec.d_min, spec.d_max));
      inst.model.rows.assign(d, std::vector<Rat>(n, Rat(0)));
      for (int di = 0; di < d; ++di) {
        bool any = false;
        for (int j = 0; j < n; ++j) {
          long v = rng.int_in(0, spec.max_value);
          inst.model.rows[di][j] = Rat(static_cast<long>(v));
          any = any || v > 0;
        }
        if (!any) inst.model.rows[di][rng.below(n)] = value();
      }
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (int di = 0; di < d; ++di) any = any || inst.model.rows[di][j] > 0;
        if (!any) inst.model.rows[rng.below(d)][j] = value();
      }
      break;
    }
  }
  for (int j = 0; j < n; ++j) {
    Job job;
    job.p = spec.unit_jobs ? Rat(1) : value();
    job.w = spec.unit_weights ? Rat(1) : value();
    job.r = spec.max_release > 0 ? Rat(static_cast<long>(rng.int_in(0, spec.max_release))) : Rat(0);
    inst.jobs.push_back(job);
  }
  validate_instance(inst);
  return inst;
}

}  // namespace pfsched
