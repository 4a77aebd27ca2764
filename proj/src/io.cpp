#include "nls/io.hpp"

#include <cstdio>

namespace nls {

namespace {

Json complex_array(const VectorXcd& v) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return Json{{"re", re}, {"im", im}};
}

Json vector_array(const std::vector<double>& v) { return Json(v); }

const char* nonlinearity_name(Nonlinearity nl) {
  return nl == Nonlinearity::GaugeCubic ? "gauge_cubic" : "plain_cubic";
}

}  // namespace

Json to_json(const RunRecord& rec) {
  Json bands = Json::array();
  const TrajectoryProfile tp = trajectory(rec);
  for (int k = 0; k <= rec.band_limit(); ++k) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < tp.per_band.cols(); ++j) row.push_back(tp.per_band(k, j));
    bands.push_back(row);
  }
  Json j{{"K", rec.cfg.K},
         {"dt", rec.cfg.dt},
         {"T", rec.cfg.T},
         {"delta", rec.cfg.delta},
         {"s", rec.cfg.s},
         {"sample_stride", rec.cfg.sample_stride},
         {"sign", rec.cfg.sign},
         {"nonlinearity", nonlinearity_name(rec.cfg.nl)},
         {"times", vector_array(rec.times)},
         {"mass", vector_array(rec.mass)},
         {"energy", vector_array(rec.energy)},
         {"band_norms", bands},
         {"guard_tripped", rec.guard_tripped}};
  if (rec.guard_tripped) {
    j["guard_time"] = rec.guard_time;
    j["guard_reason"] = rec.guard_reason;
  }
  if (!rec.snapshots.empty()) j["final_state"] = complex_array(rec.snapshots.back());
  return j;
}

Json to_json(const AprioriReport& rep) {
  return Json{{"J1", rep.J1},
              {"J2", rep.J2},
              {"J3", rep.J3},
              {"J4", rep.J4},
              {"J5", rep.J5},
              {"xts_quarter", rep.xts},
              {"b14_initial", rep.b14_initial},
              {"residual_ratio", rep.residual_ratio},
              {"delta_opt", rep.delta_opt},
              {"j1_constant", rep.j1_constant}};
}

Json to_json(const DifferenceReport& rep) {
  return Json{{"diff_xts", rep.diff_xts},
              {"initial_diff_b14", rep.initial_diff_b14},
              {"lipschitz_ratio", rep.lipschitz_ratio},
              {"M", rep.M},
              {"absorbed_ratio", rep.absorbed_ratio},
              {"delta_opt", rep.delta_opt}};
}

Json to_json(const ContinuityReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(Json{{"t1", e.t1}, {"t2", e.t2}, {"increment", e.increment}, {"bound", e.bound}, {"ratio", e.ratio}});
  return Json{{"worst_ratio", rep.worst_ratio}, {"entries", entries}};
}

Json to_json(const QuadrupleRecord& rec) {
  return Json{{"k", rec.k},       {"k1", rec.k1},       {"k2", rec.k2},    {"k3", rec.k3},
              {"phase", rec.phase}, {"member", rec.member}, {"weight", rec.weight}};
}

Json to_json(const DisjointnessReport& rep) {
  Json viol = Json::array();
  for (const auto& v : rep.violations)
    viol.push_back(Json{{"k", v.k}, {"k_prime", v.k_prime}, {"k1", v.k1}, {"k2", v.k2}, {"k3", v.k3}});
  Json ooh = Json::array();
  for (const auto& [k, kp] : rep.out_of_hypothesis) ooh.push_back(Json::array({k, kp}));
  return Json{{"K", rep.K},
              {"delta", rep.delta},
              {"pairs_in_hypothesis", rep.pairs_in_hypothesis},
              {"triples_checked", rep.triples_checked},
              {"out_of_hypothesis", ooh},
              {"violations", viol}};
}

Json to_json(const PhaseAuditReport& rep) {
  Json viol = Json::array();
  for (const auto& v : rep.violations) viol.push_back(to_json(v));
  return Json{{"K", rep.K},
              {"delta", rep.delta},
              {"quadruples_checked", rep.quadruples_checked},
              {"resonant_skipped", rep.resonant_skipped},
              {"violations", viol}};
}

Json to_json(const ExponentFit& fit) {
  Json xs = Json::array(), ys = Json::array();
  for (Eigen::Index i = 0; i < fit.xs.size(); ++i) {
    xs.push_back(fit.xs[i]);
    ys.push_back(fit.ys[i]);
  }
  return Json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual}, {"xs", xs}, {"ys", ys}};
}

Json to_json(const SoggeResult& res) {
  Json table = Json::array();
  for (const auto& e : res.table)
    table.push_back(Json{{"k", e.k1}, {"ratio", e.ratio}, {"candidate", e.candidate}});
  return Json{{"p", std::isfinite(res.p) ? Json(res.p) : Json("inf")},
              {"table", table},
              {"fit", to_json(res.fit)},
              {"fit_random", to_json(res.fit_random)},
              {"fit_structured", to_json(res.fit_structured)},
              {"fit_zonal", to_json(res.fit_zonal)}};
}

Json to_json(const BilinearResult& res) {
  Json table = Json::array();
  for (const auto& e : res.table)
    table.push_back(Json{{"k1", e.k1}, {"k2", e.k2}, {"ratio", e.ratio}, {"candidate", e.candidate}});
  return Json{{"table", table}, {"fit", to_json(res.fit)}};
}

Json to_json(const RestrictionResult& res) {
  Json rows = Json::array();
  for (size_t i = 0; i < res.ks.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    rows.push_back(Json{{"k", res.ks[i]},
                        {"l4_ratio", res.l4_ratio[idx]},
                        {"h_quarter", res.four_norms(0, idx)},
                        {"b_quarter", res.four_norms(1, idx)},
                        {"besov_21", res.four_norms(2, idx)},
                        {"besov_2inf", res.four_norms(3, idx)}});
  }
  return Json{{"rows", rows},
              {"fit", to_json(res.fit)},
              {"band_min", res.band_min},
              {"band_max", res.band_max}};
}

Json to_json(const BilinearReport& rep) {
  return Json{{"K", rep.K},         {"b", rep.b},
              {"trials", rep.trials}, {"max_ratio", rep.max_ratio},
              {"max_ratio_fixed", rep.max_ratio_fixed}, {"ratios", vector_array(rep.ratios)}};
}

Json to_json(const TrilinearReport& rep) {
  return Json{{"K", rep.K},           {"b", rep.b},       {"b_prime", rep.b_prime},
              {"trials", rep.trials}, {"max_ratio", rep.max_ratio}, {"ratios", vector_array(rep.ratios)}};
}

Json to_json(const PicardResult& res) {
  return Json{{"iterations", res.iterations},
              {"contracted", res.contracted},
              {"diffs", vector_array(res.diffs)},
              {"ratios", vector_array(res.ratios)}};
}

void write_run_csv(std::ostream& os, const RunRecord& rec, const AprioriReport* diag) {
  const TrajectoryProfile tp = trajectory(rec);
  os << "t,mass,energy";
  for (int k = 0; k <= rec.band_limit(); ++k) os << ",band_" << k;
  if (diag) os << ",j1_integrand,j3_integrand,j4_integrand,j5_integrand";
  os << "\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (size_t j = 0; j < rec.times.size(); ++j) {
    put(rec.times[j]);
    os << ',';
    put(rec.mass[j]);
    os << ',';
    put(rec.energy[j]);
    for (int k = 0; k <= rec.band_limit(); ++k) {
      os << ',';
      put(tp.per_band(k, static_cast<Eigen::Index>(j)));
    }
    if (diag) {
      for (const auto* s : {&diag->j1_series, &diag->j3_series, &diag->j4_series, &diag->j5_series}) {
        os << ',';
        put(j < s->size() ? (*s)[j] : 0.0);
      }
    }
    os << "\n";
  }
}

void write_fit_csv(std::ostream& os, const std::vector<RatioEntry>& table) {
  os << "k1,k2,ratio,candidate\n";
  char buf[32];
  for (const auto& e : table) {
    std::snprintf(buf, sizeof buf, "%.17g", e.ratio);
    os << e.k1 << ',' << e.k2 << ',' << buf << ',' << e.candidate << "\n";
  }
}

}  // namespace nls
