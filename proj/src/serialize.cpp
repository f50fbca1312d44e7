#include "sharesig/serialize.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sharesig/format.hpp"

namespace sharesig {

namespace {

// JSON has no NaN; absent quantities become null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json estimate(const Estimate& e) {
  return Json{{"value", num(e.value)}, {"se", num(e.se)}, {"n", e.n}};
}

}  // namespace

Json to_json(const ModelParams& p) {
  return Json{{"q", p.q},         {"beta", p.beta},         {"eta", p.eta},
              {"p_T", p.p_T},     {"lambda_S", p.lambda_S}, {"lambda_R", p.lambda_R},
              {"c_S", p.c_S},     {"p_S", p.p_S},           {"p_R", p.p_R}};
}

Json to_json(const DistributionSpec& d) {
  Json j{{"kind", d.kind}};
  if (d.kind == "uniform") {
    j["a"] = d.a;
    j["b"] = d.b;
  } else if (d.kind == "beta") {
    j["alpha"] = d.alpha;
    j["beta"] = d.beta;
  } else if (d.kind == "piecewise") {
    j["x"] = d.knots_x;
    j["y"] = d.knots_y;
  } else {
    j["x"] = d.x;
  }
  return j;
}

Json to_json(const AbilityEquilibrium& eq) {
  return Json{{"kappa0_star", eq.kappa0_star},
              {"gamma", eq.gamma},
              {"status", std::string(to_string(eq.status))},
              {"residual", eq.residual},
              {"beliefs",
               {{"pi_0P", eq.beliefs.pi_0P},
                {"pi_0U", eq.beliefs.pi_0U},
                {"pi_empty", eq.beliefs.pi_empty}}}};
}

Json to_json(const WorldviewEquilibrium& eq) {
  return Json{{"p_Sl_star", eq.p_Sl_star},
              {"p_Sh_star", eq.p_Sh_star},
              {"xi", eq.xi},
              {"xi_multiple", eq.xi_multiple},
              {"c_bar_S", eq.c_bar_S},
              {"posteriors",
               {{"pS_given_0", num(eq.posteriors.pS_given_0)},
                {"pS_given_1", num(eq.posteriors.pS_given_1)},
                {"pS_given_empty", num(eq.posteriors.pS_given_empty)}}},
              {"gamma", num(eq.gamma)},
              {"status", std::string(to_string(eq.status))},
              {"residuals", {eq.residual_l, eq.residual_h}},
              {"ordering_ok", eq.ordering_ok}};
}

Json to_json(const Assumption1Audit& a) {
  Json violations = Json::array();
  for (const AuditPoint& v : a.violations) {
    violations.push_back({{"p_Sl", v.p_Sl},
                          {"p_Sh", v.p_Sh},
                          {"dCl_dpSl", v.dCl_dpSl},
                          {"dCh_dpSh", v.dCh_dpSh},
                          {"det", v.det}});
  }
  return Json{{"grid_resolution", a.grid_resolution},
              {"max_dCl_dpSl", a.max_dCl_dpSl},
              {"min_dCh_dpSh", a.min_dCh_dpSh},
              {"max_det", a.max_det},
              {"pass", a.pass()},
              {"violations", violations}};
}

Json to_json(const SimReport& r) {
  Json j{{"regime", std::string(to_string(r.regime))},
         {"n_draws", r.n_draws},
         {"seed", r.seed},
         {"isa", r.isa},
         {"receiver_model_matches", r.receiver_model_matches},
         {"share_rate", estimate(r.share_rate)},
         {"gamma", estimate(r.gamma)},
         {"sigma1_rate", estimate(r.sigma1_rate)}};
  if (r.regime == Regime::Ability) {
    j["posteriors"] = {{"high_among_shares", estimate(r.high_among_shares)},
                       {"pi_0P", estimate(r.pi_0P)},
                       {"pi_0U", estimate(r.pi_0U)},
                       {"pi_empty", estimate(r.pi_empty)}};
  } else {
    j["posteriors"] = {{"pS_given_0", estimate(r.pS_given_0)},
                       {"pS_given_1", estimate(r.pS_given_1)},
                       {"pS_given_empty", estimate(r.pS_given_empty)}};
  }
  Json cells = Json::object();
  for (const SimCell& c : r.cells) cells[c.name] = c.count;
  j["cells"] = cells;
  return j;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvTable::close_row() {
  if (!open_) return;
  if (filled_ != columns_) throw std::logic_error("CSV row has the wrong width");
  out_ += '\n';
  open_ = false;
}

CsvTable& CsvTable::row() {
  close_row();
  open_ = true;
  filled_ = 0;
  ++rows_;
  return *this;
}

CsvTable& CsvTable::cell(std::string_view v) {
  if (!open_) throw std::logic_error("CSV cell outside a row");
  if (filled_++) out_ += ',';
  out_ += v;
  return *this;
}

CsvTable& CsvTable::cell(double v) { return cell(std::string_view(format_double(v))); }

std::string CsvTable::str() const {
  CsvTable copy = *this;
  copy.close_row();
  return copy.out_;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sharesig
