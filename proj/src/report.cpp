#include "kz/report.hpp"

#include <fstream>
#include <sstream>

namespace kz {

namespace {
ojson cplx_json(const cplx& z) { return ojson::array({z.real(), z.imag()}); }

ojson matrix_json(const Eigen::MatrixXcd& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(cplx_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace

ojson to_json(const Origami& o) {
  return ojson{{"n", o.squares()}, {"h", o.h().images()}, {"v", o.v().images()}};
}

Origami origami_from_json(const ojson& j) {
  std::vector<int> h = j.at("h").get<std::vector<int>>();
  std::vector<int> v = j.at("v").get<std::vector<int>>();
  if (int(h.size()) != j.at("n").get<int>()) throw invalid_surface("json: n mismatch");
  return Origami(Permutation(h), Permutation(v));
}

ojson to_json(const CoverResult& c) {
  ojson j;
  j["spec"] = c.spec.str();
  j["origami"] = to_json(c.origami);
  j["deck"] = c.deck.images();
  j["genus"] = c.origami.genus();
  j["zero_orders"] = c.origami.profile().zero_orders;
  return j;
}

ojson to_json(const EigenData& e) {
  ojson j;
  j["N"] = e.N;
  j["a"] = e.a;
  j["t"] = e.t;
  j["dims_holo"] = e.dims_holo;
  j["i0"] = e.i0;
  j["i1"] = e.i1;
  j["predicted_positive_count"] = e.predicted_positive_count;
  ojson lam = ojson::object();
  for (const auto& [k, r] : e.predicted_lambda) lam[std::to_string(k)] = r.str();
  j["predicted_lambda"] = std::move(lam);
  ojson spec = ojson::array();
  for (const Rat& r : e.predicted_nonneg_spectrum()) spec.push_back(r.str());
  j["predicted_nonneg_spectrum"] = std::move(spec);
  j["genus"] = e.genus;
  return j;
}

ojson to_json(const LyapunovReport& r) {
  ojson j;
  j["version"] = kVersion;
  j["automaton_hash"] = r.automaton_hash;
  j["steps"] = r.steps;
  j["digits_used"] = r.digits_used;
  j["seed"] = r.seed;
  j["seeds_merged"] = r.seeds_merged;
  j["qr_interval"] = r.qr_interval;
  j["qr_reductions"] = r.qr_reductions;
  j["normalizer"] = r.normalizer;
  j["word_convention"] = kWordConvention;
  ojson blocks = ojson::array();
  for (const BlockExponents& b : r.blocks) {
    ojson bj;
    bj["label"] = b.label;
    bj["dim"] = b.dim;
    bj["exponents"] = b.exponents;
    bj["stderr"] = b.stderrs;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ojson to_json(const SubspaceCheckReport& r) {
  ojson j;
  j["forward_exponents"] = r.forward_exponents;
  j["backward_exponents"] = r.backward_exponents;
  j["max_nondual_pairing"] = r.max_nondual_pairing;
  j["min_dual_pairing"] = r.min_dual_pairing;
  j["inconclusive_pairs"] = r.inconclusive_pairs;
  return j;
}

ojson to_json(const SecondFundamentalFormMatrix& sf) {
  ojson j;
  j["version"] = kVersion;
  ojson cfg;
  ojson pts = ojson::array();
  for (const auto& p : sf.frame.basis.config.points) pts.push_back(cplx_json(p));
  cfg["points"] = std::move(pts);
  cfg["exponents"] = sf.frame.basis.config.exponents;
  cfg["exponent_at_infinity"] = sf.frame.basis.config.exponent_at_infinity;
  cfg["tau"] = cplx_json(sf.frame.basis.config.tau);
  j["config"] = std::move(cfg);
  j["genus"] = sf.frame.basis.genus;
  j["area"] = sf.frame.area;
  j["B"] = matrix_json(sf.B);
  j["H"] = matrix_json(sf.H);
  j["Lambda"] = sf.lambda;
  j["takagi"] = sf.takagi;
  j["rank"] = sf.rank;
  j["rank_indeterminate"] = sf.rank_indeterminate;
  j["annihilator"] = matrix_json(sf.annihilator);
  j["quadrature_error"] = sf.quadrature_error;
  j["max_forced_zero"] = sf.max_forced_zero;
  ojson chars = ojson::array();
  for (int c : sf.frame.char_exponent) chars.push_back(c);
  j["frame_character_exponents"] = std::move(chars);
  return j;
}

ojson to_json(const KontsevichReport& r) {
  ojson j;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["mean_trace"] = r.mean_trace;
  j["stderr_trace"] = r.stderr_trace;
  j["min_trace"] = r.min_trace;
  j["max_trace"] = r.max_trace;
  ojson blocks = ojson::object();
  for (const auto& [k, v] : r.block_mean) {
    blocks[std::to_string(k)] =
        ojson{{"mean", v}, {"stderr", r.block_stderr.at(k)}};
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ojson to_json(const ZCandidate& c, const ZValidation& v) {
  ojson j = to_json(c.origami);
  j["z3_deck"] = c.z3_deck.images();
  j["cocycle"] = ojson{{"rho_h", c.rho_h}, {"rho_v", c.rho_v}};
  j["accepted"] = v.accepted;
  j["diagnostic"] = v.diagnostic;
  if (v.accepted) {
    j["order6"] = v.order6.images();
    j["block_dims"] = v.block_dims;
  }
  return j;
}

ZCandidate z_candidate_from_json(const ojson& j) {
  ZCandidate c;
  c.origami = origami_from_json(j);
  c.z3_deck = Permutation(j.at("z3_deck").get<std::vector<int>>());
  c.rho_h = j.at("cocycle").at("rho_h").get<std::vector<int>>();
  c.rho_v = j.at("cocycle").at("rho_v").get<std::vector<int>>();
  return c;
}

std::string trace_csv(const LyapunovReport& r) {
  std::ostringstream out;
  out << "step,block_label,lambda_index,running_estimate\n";
  for (const TracePoint& t : r.trace)
    out << t.step << "," << t.block << "," << t.index << "," << t.value << "\n";
  return out.str();
}

std::string trace_svg(const LyapunovReport& r) {
  const double w = 900, h = 500, pad = 40;
  double tmax = 1, vmin = -1.1, vmax = 1.1;
  for (const TracePoint& t : r.trace) {
    tmax = std::max(tmax, double(t.step));
    vmin = std::min(vmin, t.value);
    vmax = std::max(vmax, t.value);
  }
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  auto sx = [&](double s) { return pad + (w - 2 * pad) * s / tmax; };
  auto sy = [&](double v) { return h - pad - (h - 2 * pad) * (v - vmin) / (vmax - vmin); };
  out << "<line x1='" << sx(0) << "' y1='" << sy(0) << "' x2='" << sx(tmax) << "' y2='"
      << sy(0) << "' stroke='#999'/>\n";
  std::map<std::pair<std::string, int>, std::vector<std::pair<double, double>>> paths;
  for (const TracePoint& t : r.trace) paths[{t.block, t.index}].push_back({double(t.step), t.value});
  int hue = 0;
  for (const auto& [key, pts] : paths) {
    out << "<polyline fill='none' stroke='hsl(" << (hue = (hue + 47) % 360)
        << ",60%,40%)' stroke-width='1' points='";
    for (const auto& [s, v] : pts) out << sx(s) << "," << sy(v) << " ";
    out << "'/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace kz
