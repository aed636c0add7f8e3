#include <cstdio>

#include "pfsched/report.hpp"

namespace pfsched {

using nlohmann::json;

namespace {

json rat_vec_json(const std::vector<Rat>& v) {
  json out = json::array();
  for (const Rat& q : v) out.push_back(rat_json(q));
  return out;
}

std::vector<Rat> rat_vec_from(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected array");
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(rat_from_json(e, where));
  return out;
}

Int int_from(const json& v, const std::string& where) {
  const Rat q = rat_from_json(v, where);
  if (q.get_den() != 1) throw ParseError(where + ": expected an integer");
  return q.get_num();
}

json int_json(const Int& v) { return rat_json(Rat(v)); }

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

json schedule_json(const Schedule& s) {
  json doc;
  json pieces = json::array();
  for (const auto& pc : s.pieces) {
    json e;
    e["t0"] = rat_json(pc.t0);
    e["t1"] = rat_json(pc.t1);
    e["y"] = rat_vec_json(pc.y);
    if (!pc.x.empty()) {
      json x = json::array();
      for (const auto& row : pc.x) x.push_back(rat_vec_json(row));
      e["x"] = x;
    }
    pieces.push_back(e);
  }
  doc["pieces"] = pieces;
  doc["completion"] = rat_vec_json(s.completion);
  doc["objective"] = rat_json(s.objective);
  return doc;
}

json timeline_json(const EventTimeline& tl) {
  json doc;
  json slices = json::array();
  for (const auto& sl : tl.slices) {
    json e;
    e["t0"] = rat_json(sl.t0);
    e["t1"] = rat_json(sl.t1);
    e["active"] = sl.active;
    e["y"] = rat_vec_json(sl.rates.y);
    if (!sl.rates.eta.empty()) e["eta"] = rat_vec_json(sl.rates.eta);
    if (!sl.rates.delta.empty()) e["delta"] = rat_vec_json(sl.rates.delta);
    slices.push_back(e);
  }
  doc["slices"] = slices;
  doc["completion"] = rat_vec_json(tl.completion);
  doc["objective"] = rat_json(tl.objective);
  doc["exact"] = tl.exact;
  doc["max_gap"] = tl.max_gap;
  return doc;
}

json certificate_json(const DualCertificate& cert) {
  json doc;
  doc["kind"] = certificate_kind_name(cert.kind);
  doc["kappa"] = rat_json(cert.kappa);
  if (cert.kind == CertificateKind::GeneralPsp) doc["lambda"] = rat_json(cert.lambda);
  doc["weight_scale"] = int_json(cert.weight_scale);
  doc["scale"] = int_json(cert.tables.scale);
  doc["guarantee"] = rat_json(cert.guarantee);
  doc["alg_scaled"] = rat_json(cert.alg_scaled);
  doc["dual_objective"] = rat_json(cert.dual_objective);
  if (!cert.tables.rows.empty()) {
    json rows = json::array();
    for (const auto& row : cert.tables.rows) rows.push_back(rat_vec_json(row));
    doc["rows"] = rows;
  }
  doc["alpha"] = rat_vec_json(cert.tables.alpha);

  json beta = json::array();
  Int cells = 0;
  for (const auto& row : cert.tables.beta) {
    json segs = json::array();
    for (const auto& seg : row) {
      json e;
      e["t0"] = int_json(seg.t0);
      e["t1"] = int_json(seg.t1);
      e["c0"] = rat_json(seg.c0);
      e["c1"] = rat_json(seg.c1);
      segs.push_back(e);
      cells += seg.t1 - seg.t0;
    }
    beta.push_back(segs);
  }
  doc["beta"] = beta;

  if (cells <= 2048) {
    json table = json::array();
    for (const auto& row : cert.tables.beta) {
      json vals = json::array();
      for (const auto& seg : row)
        for (Int t = seg.t0; t < seg.t1; ++t) {
          json e;
          e["t"] = int_json(t);
          e["v"] = rat_json(seg.c0 + seg.c1 * Rat(t));
          vals.push_back(e);
        }
      table.push_back(vals);
    }
    doc["beta_cells"] = table;
  }
  return doc;
}

static DualCertificate certificate_from_json_checked(const json& doc);

DualCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("certificate must be a JSON object");
  try {
    return certificate_from_json_checked(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

static DualCertificate certificate_from_json_checked(const json& doc) {
  DualCertificate cert;
  cert.kind = certificate_kind_from_name(doc.at("kind").get<std::string>());
  cert.kappa = rat_from_json(doc.at("kappa"), "kappa");
  if (doc.contains("lambda")) cert.lambda = rat_from_json(doc.at("lambda"), "lambda");
  if (doc.contains("weight_scale"))
    cert.weight_scale = int_from(doc.at("weight_scale"), "weight_scale");
  cert.tables.scale = int_from(doc.at("scale"), "scale");
  cert.guarantee = rat_from_json(doc.at("guarantee"), "guarantee");
  cert.alg_scaled = rat_from_json(doc.at("alg_scaled"), "alg_scaled");
  cert.dual_objective = rat_from_json(doc.at("dual_objective"), "dual_objective");
  if (doc.contains("rows")) {
    for (const auto& row : doc.at("rows")) cert.tables.rows.push_back(rat_vec_from(row, "rows"));
  }
  cert.tables.alpha = rat_vec_from(doc.at("alpha"), "alpha");
  for (const auto& row : doc.at("beta")) {
    std::vector<BetaSegment> segs;
    for (const auto& e : row) {
      BetaSegment seg;
      seg.t0 = int_from(e.at("t0"), "beta t0");
      seg.t1 = int_from(e.at("t1"), "beta t1");
      seg.c0 = rat_from_json(e.at("c0"), "beta c0");
      seg.c1 = rat_from_json(e.at("c1"), "beta c1");
      segs.push_back(seg);
    }
    cert.tables.beta.push_back(std::move(segs));
  }
  return cert;
}

json verdict_json(const CertificateVerdict& v) {
  json doc;
  doc["ok"] = v.ok;
  doc["feasible"] = v.feasible;
  doc["max_violation"] = rat_json(v.max_violation);
  doc["dual_objective"] = rat_json(v.dual_objective);
  doc["alg_scaled"] = rat_json(v.alg_scaled);
  doc["identity_residual"] = rat_json(v.identity_residual);
  doc["ratio"] = rat_json(v.ratio);
  doc["note"] = v.note;
  if (v.worst.job >= 0 || v.worst.row >= 0) {
    json w;
    w["job"] = v.worst.job;
    w["row"] = v.worst.row;
    w["t"] = int_json(v.worst.cell);
    w["violation"] = rat_json(v.worst.violation);
    doc["worst"] = w;
  }
  return doc;
}

json result_skeleton(const std::string& command, const Instance& ins) {
  json doc;
  doc["schema"] = kResultSchema;
  doc["command"] = command;
  doc["instance"] = instance_to_json(ins);
  doc["digest"] = instance_digest(ins);
  return doc;
}

std::string result_dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string result_digest(const json& doc) {
  json copy = doc;
  copy.erase("timing");
  return fnv1a(copy.dump());
}

}  // namespace pfsched
