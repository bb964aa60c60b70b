#include "hahn/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace hahn {

using Json = nlohmann::ordered_json;

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json instanceJson(const AlphaPlan& plan) {
  return Json{{"p", plan.params().p},
              {"gamma_x", plan.params().gammaX.str()},
              {"v_s", plan.params().vS.str()},
              {"work_prec", plan.workPrec().str()},
              {"v_c", plan.c().valuation.str()}};
}

Json stagesJson(const AlphaPlan& plan) {
  Json rows = Json::array();
  for (const auto& s : plan.stages()) {
    rows.push_back(Json{{"m", s.m},
                        {"omega", s.label.str()},
                        {"origin", stageOriginName(s.origin)},
                        {"v_e", s.vE.str()},
                        {"b", s.b},
                        {"v_eps", s.vEps.str()}});
  }
  return rows;
}

Json ratList(const std::vector<Rat>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

Json certificateSummary(const AdaptedCertificate& c) {
  return Json{{"m", c.stage},
              {"q", c.q.str()},
              {"image_valuation", c.imageValuation.str()},
              {"lead_t", c.leadT.str()},
              {"residual_bound", c.residualBound.str()},
              {"norm_in_range", c.normInRange},
              {"leading_exponent", c.leadingExponentOk},
              {"residual_small", c.residualOk}};
}

}  // namespace

std::string planTranscript(const AlphaPlan& plan, const std::vector<AdaptedCertificate>& certs) {
  Json doc;
  doc["format"] = kPlanFormat;
  doc["instance"] = instanceJson(plan);
  doc["stage_count"] = plan.size();
  doc["stages"] = stagesJson(plan);
  doc["alpha_tail_bound"] = plan.tailBound().str();
  Json summary = Json::array();
  for (const auto& c : certs) summary.push_back(certificateSummary(c));
  doc["certificates"] = summary;
  return doc.dump(2) + "\n";
}

std::string certificateDocument(const AlphaPlan& plan, const AdaptedCertificate& cert) {
  Json doc;
  doc["format"] = kCertificateFormat;
  doc["instance"] = instanceJson(plan);
  doc["stages"] = stagesJson(plan);
  doc["certificate"] = certificateSummary(cert);
  doc["certificate"]["lead_coeff"] = cert.leadCoeff;
  doc["certificate"]["quotient_valuations"] = ratList(cert.quotientValuations);
  doc["certificate"]["preimage"] = toText(cert.preimage.series());
  doc["certificate"]["image"] = toText(cert.image);
  return doc.dump(2) + "\n";
}

std::string traceDocument(const AlphaPlan& plan, const DivisionTrace& trace,
                          const TraceHeader& header) {
  Json doc;
  doc["format"] = kTraceFormat;
  doc["instance"] = instanceJson(plan);
  doc["target_hash"] = "fnv1a64:" + fnv1a64(header.targetText);
  doc["shift"] = header.shift;
  doc["steps_requested"] = trace.steps.size();
  doc["stages"] = stagesJson(plan);
  doc["target"] = toText(trace.target);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"m", s.m},
                         {"slice", toText(s.slice)},
                         {"e", toText(s.e.series())},
                         {"a_next", toText(s.aNext.series())},
                         {"beta_next", toText(s.betaNext)},
                         {"certified_bound", s.certifiedBound.str()},
                         {"residual_valuation", s.residualValuation.str()},
                         {"exponents", ratList(s.exponents)},
                         {"quotient_valuations", ratList(s.quotientValuations)}});
  }
  doc["steps"] = steps;
  doc["a_final"] = toText(trace.aFinal.series());
  doc["final_residual_valuation"] = trace.finalResidualValuation.str();
  return doc.dump(2) + "\n";
}

}  // namespace hahn
