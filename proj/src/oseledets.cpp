#include "kz/oseledets.hpp"

#include <cmath>
#include <deque>

#include "kz/gauss_word.hpp"
#include "kz/parallel.hpp"

namespace kz {

namespace {

struct Frame {
  std::string label;
  Eigen::MatrixXd w;
  const std::vector<std::array<Eigen::MatrixXd, 4>>* step;  // null: ambient
  std::vector<double> logsum;
  std::vector<std::vector<double>> batch_logsum;  // [batch][col]

  Frame(std::string lbl, Eigen::MatrixXd start,
        const std::vector<std::array<Eigen::MatrixXd, 4>>* st, int batches)
      : label(std::move(lbl)),
        w(std::move(start)),
        step(st),
        logsum(w.cols(), 0.0),
        batch_logsum(batches, std::vector<double>(w.cols(), 0.0)) {}

  void orthonormalize(int batch) {
    for (int c = 0; c < w.cols(); ++c) {
      for (int p = 0; p < c; ++p) w.col(c) -= w.col(p).dot(w.col(c)) * w.col(p);
      double nrm = w.col(c).norm();
      if (!(nrm > 1e-300))
        throw std::runtime_error("oseledets: frame degenerated (non-invertible R diagonal)");
      double lg = std::log(nrm);
      logsum[c] += lg;
      batch_logsum[batch][c] += lg;
      w.col(c) /= nrm;
    }
  }
};

// moves: 0 = T, 1 = T⁻¹, 2 = S, 3 = S⁻¹
const OrbitTransition& move_of(const OrbitAutomaton& aut, int state, int mv) {
  return mv < 3 ? aut.transition(state, Gen(mv)) : aut.s_inverse(state);
}

// Walk driver shared by all runs. A digit pair (a,b) expands to the geodesic
// word T^a · (S T^{-b} S^{-1}): alternating horizontal and vertical shear
// blocks whose 2x2 products are the nonnegative continued-fraction matrices.
template <typename PerStep>
long long drive(const OrbitAutomaton& aut, long long steps, uint64_t seed, int start_state,
                PerStep&& per_step) {
  GaussDigitSampler sampler(seed);
  long long digits = 0;
  long long done = 0;
  int state = start_state;
  auto mv = [&](int m) {
    per_step(state, m);
    state = move_of(aut, state, m).target;
    ++done;
  };
  while (done < steps) {
    int a = sampler.next();
    ++digits;
    for (int k = 0; k < a && done < steps; ++k) mv(0);  // T^a
    if (done >= steps) break;
    int b = sampler.next();
    ++digits;
    mv(3);                                              // S^{-1} first in time
    for (int k = 0; k < b && done < steps; ++k) mv(1);  // T^{-b}
    if (done >= steps) break;
    mv(2);                                              // closing S
  }
  return digits;
}

Eigen::MatrixXd to_f(const IMat& m) {
  Eigen::MatrixXd f(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) f(i, j) = double(m.at(i, j));
  return f;
}

std::array<Eigen::MatrixXd, 4> sl2_moves() {
  std::array<Eigen::MatrixXd, 4> s;
  for (int m = 0; m < 3; ++m) s[m] = to_f(sl2_of(Gen(m)));
  s[3] = to_f(inverse_unimodular(sl2_of(Gen::S)));
  return s;
}

}  // namespace

const BlockExponents& LyapunovReport::block(const std::string& label) const {
  for (const auto& b : blocks)
    if (b.label == label) return b;
  throw std::out_of_range("no block labeled '" + label + "' in report");
}

double LyapunovReport::symmetry_defect(const std::string& label) const {
  const BlockExponents& b = block(label);
  double worst = 0;
  for (size_t i = 0; i < b.exponents.size() / 2; ++i)
    worst = std::max(worst,
                     std::abs(b.exponents[i] + b.exponents[b.exponents.size() - 1 - i]));
  return worst;
}

std::vector<BlockBundle> build_block_bundles(const OrbitAutomaton& aut, const IMat& base_deck,
                                             int N, double rank_tol) {
  std::vector<RealBlock> base_blocks = real_primary_decomposition(base_deck, N, rank_tol);

  // transport the deck matrix over the orbit; must be path-independent
  std::vector<IMat> deck_at(aut.size());
  std::vector<char> have(aut.size(), 0);
  deck_at[aut.base()] = base_deck;
  have[aut.base()] = 1;
  std::deque<int> todo{aut.base()};
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (Gen g : {Gen::T, Gen::Tinv, Gen::S}) {
      const OrbitTransition& tr = aut.transition(s, g);
      IMat transported = tr.m.mul(deck_at[s]).mul(inverse_unimodular(tr.m));
      if (!have[tr.target]) {
        deck_at[tr.target] = std::move(transported);
        have[tr.target] = 1;
        todo.push_back(tr.target);
      } else if (!(deck_at[tr.target] == transported)) {
        throw std::logic_error("deck transport along the orbit is path-dependent");
      }
    }
  }
  const int kMoves = 4;

  std::vector<BlockBundle> out;
  for (const RealBlock& blk : base_blocks) {
    BlockBundle bundle;
    bundle.label = blk.label;
    bundle.rational = blk.rational;
    bundle.dim = blk.dim();
    bundle.step.resize(aut.size());

    if (blk.rational) {
      // exact basis per state: kernel of the same cyclotomic factor of the
      // transported deck
      std::vector<i64> phi = cyclotomic_poly(blk.divisor);
      std::vector<IMat> basis_at(aut.size());
      for (int s = 0; s < aut.size(); ++s) {
        IMat acc(aut.rank(), aut.rank());
        for (int i = int(phi.size()) - 1; i >= 0; --i) {
          acc = acc.mul(deck_at[s]);
          for (int d = 0; d < aut.rank(); ++d) acc.at(d, d) = checked_add(acc.at(d, d), phi[i]);
        }
        basis_at[s] = kernel_basis(acc);
        if (basis_at[s].cols() != bundle.dim)
          throw std::logic_error("block dimension changed along the orbit");
      }
      for (int s = 0; s < aut.size(); ++s)
        for (int m = 0; m < kMoves; ++m) {
          const OrbitTransition& tr = move_of(aut, s, m);
          auto r = solve_integer_mat(basis_at[tr.target], tr.m.mul(basis_at[s]));
          if (!r) throw invalid_surface("not an invariant subbundle");
          bundle.step[s][m] = to_f(*r);
        }
    } else {
      // transported orthonormal basis per state (first visit wins), with
      // residual-checked projection at every transition
      std::vector<Eigen::MatrixXd> basis_at(aut.size());
      std::vector<char> seen(aut.size(), 0);
      basis_at[aut.base()] = blk.fbasis;
      seen[aut.base()] = 1;
      std::deque<int> q{aut.base()};
      while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (Gen g : {Gen::T, Gen::Tinv, Gen::S}) {
          const OrbitTransition& tr = aut.transition(s, g);
          if (seen[tr.target]) continue;
          Eigen::MatrixXd img = tr.mf * basis_at[s];
          Eigen::HouseholderQR<Eigen::MatrixXd> qr(img);
          basis_at[tr.target] =
              qr.householderQ() * Eigen::MatrixXd::Identity(img.rows(), img.cols());
          seen[tr.target] = 1;
          q.push_back(tr.target);
        }
      }
      for (int s = 0; s < aut.size(); ++s)
        for (int m = 0; m < kMoves; ++m) {
          const OrbitTransition& tr = move_of(aut, s, m);
          Eigen::MatrixXd img = tr.mf * basis_at[s];
          Eigen::MatrixXd r = basis_at[tr.target].transpose() * img;
          double resid = (img - basis_at[tr.target] * r).norm();
          if (resid > 1e-6 * std::max(1.0, img.norm()))
            throw invalid_surface("not an invariant subbundle");
          bundle.step[s][m] = std::move(r);
        }
    }
    out.push_back(std::move(bundle));
  }
  return out;
}

LyapunovReport run_oseledets(const OrbitAutomaton& aut, const RunOptions& opt,
                             const std::vector<BlockBundle>& bundles) {
  if (opt.steps < 10000) throw std::invalid_argument("run_oseledets: need at least 1e4 steps");
  if (opt.qr_interval < 1 || opt.batches < 2) throw std::invalid_argument("bad run options");

  std::vector<std::array<Eigen::MatrixXd, 4>> taut_step_per_state(aut.size(), sl2_moves());

  std::vector<Frame> frames;
  frames.emplace_back("taut", Eigen::MatrixXd::Identity(2, 2), &taut_step_per_state, opt.batches);
  if (opt.include_full)
    frames.emplace_back("full", Eigen::MatrixXd::Identity(aut.rank(), aut.rank()), nullptr,
                        opt.batches);
  for (const BlockBundle& b : bundles)
    frames.emplace_back(b.label, Eigen::MatrixXd::Identity(b.dim, b.dim), &b.step, opt.batches);

  LyapunovReport rep;
  rep.automaton_hash = aut.hash();
  rep.steps = opt.steps;
  rep.seed = opt.seed;

  // growth between re-orthonormalizations is bounded by (max row sum)^interval;
  // shrink the interval up front if that could approach the double range
  double worst = 2.0;
  for (int s = 0; s < aut.size(); ++s)
    for (Gen g : {Gen::T, Gen::Tinv, Gen::S}) {
      const Eigen::MatrixXd& m = aut.transition(s, g).mf;
      worst = std::max(worst, m.cwiseAbs().rowwise().sum().maxCoeff());
    }
  int interval = opt.qr_interval;
  while (interval > 1 && double(interval) * std::log10(worst) > 250.0) {
    interval /= 2;
    ++rep.qr_reductions;
  }
  rep.qr_interval = interval;

  long long step = 0;
  auto per_step = [&](int state, int mv) {
    int batch = int(std::min<long long>(step * opt.batches / opt.steps, opt.batches - 1));
    bool qr_now = ((step + 1) % interval == 0) || (step + 1 == opt.steps);
    for (Frame& f : frames) {
      const Eigen::MatrixXd& m = f.step ? (*f.step)[state][mv] : move_of(aut, state, mv).mf;
      f.w = m * f.w;
      if (qr_now) f.orthonormalize(batch);
    }
    ++step;
    if (opt.trace_every > 0 && step % opt.trace_every == 0 && frames[0].logsum[0] > 0) {
      double norm = frames[0].logsum[0];
      for (const Frame& f : frames)
        for (int c = 0; c < int(f.logsum.size()); ++c)
          rep.trace.push_back({step, f.label, c, f.logsum[c] / norm});
    }
  };
  rep.digits_used = drive(aut, opt.steps, opt.seed, aut.base(), per_step);

  const double normalizer = frames[0].logsum[0];
  if (!(normalizer > 0)) throw std::runtime_error("oseledets: tautological growth not positive");
  rep.normalizer = normalizer;
  for (const Frame& f : frames) {
    BlockExponents be;
    be.label = f.label;
    be.dim = int(f.logsum.size());
    for (int c = 0; c < be.dim; ++c) be.exponents.push_back(f.logsum[c] / normalizer);
    for (int c = 0; c < be.dim; ++c) {
      double mean = 0;
      std::vector<double> vals;
      for (int b = 0; b < opt.batches; ++b) {
        double tb = frames[0].batch_logsum[b][0];
        if (tb <= 0) tb = normalizer / opt.batches;  // guard for degenerate batches
        vals.push_back(f.batch_logsum[b][c] / tb);
        mean += vals.back();
      }
      mean /= opt.batches;
      double var = 0;
      for (double v : vals) var += (v - mean) * (v - mean);
      var /= (opt.batches - 1);
      be.stderrs.push_back(std::sqrt(var / opt.batches));
    }
    rep.blocks.push_back(std::move(be));
  }
  return rep;
}

LyapunovReport merge_reports(const std::vector<LyapunovReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("merge_reports: empty");
  LyapunovReport out = reports[0];
  if (reports.size() == 1) return out;
  int k = int(reports.size());
  for (size_t bi = 0; bi < out.blocks.size(); ++bi) {
    for (size_t c = 0; c < out.blocks[bi].exponents.size(); ++c) {
      double mean = 0, var = 0;
      for (const auto& r : reports) mean += r.blocks[bi].exponents[c];
      mean /= k;
      for (const auto& r : reports) {
        double s = r.blocks[bi].stderrs[c];
        var += s * s;
      }
      out.blocks[bi].exponents[c] = mean;
      out.blocks[bi].stderrs[c] = std::sqrt(var) / k;
    }
  }
  out.seeds_merged = k;
  out.steps = 0;
  out.digits_used = 0;
  for (const auto& r : reports) {
    out.steps += r.steps;
    out.digits_used += r.digits_used;
    out.qr_reductions += r.qr_reductions;
  }
  out.trace.clear();
  return out;
}

LyapunovReport run_multi_seed(const OrbitAutomaton& aut, const RunOptions& opt,
                              const std::vector<uint64_t>& seeds,
                              const std::vector<BlockBundle>& bundles, bool parallel) {
  if (seeds.empty()) throw std::invalid_argument("run_multi_seed: need at least one seed");
  std::vector<LyapunovReport> slots(seeds.size());
  parallel_for(int(seeds.size()), parallel, [&](int i) {
    RunOptions o = opt;
    o.seed = seeds[i];
    o.trace_every = 0;
    slots[i] = run_oseledets(aut, o, bundles);
  });
  LyapunovReport merged = merge_reports(slots);
  merged.seed = seeds[0];
  return merged;
}

SubspaceCheckReport oseledets_subspace_check(const OrbitAutomaton& aut, const RunOptions& opt) {
  // forward half: exponents plus the frame at the midpoint state
  LyapunovReport fwd = run_oseledets(aut, opt, {});

  const int r = aut.rank();
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(r, r);
  int mid_state = aut.base();
  {
    long long step = 0;
    drive(aut, opt.steps, opt.seed, aut.base(), [&](int state, int mv) {
      f = move_of(aut, state, mv).mf * f;
      mid_state = move_of(aut, state, mv).target;
      if (++step % opt.qr_interval == 0 || step == opt.steps) {
        for (int c = 0; c < r; ++c) {
          for (int p = 0; p < c; ++p) f.col(c) -= f.col(p).dot(f.col(c)) * f.col(p);
          f.col(c) /= f.col(c).norm();
        }
      }
    });
  }

  // second half, recorded for backward replay
  std::vector<std::pair<int, int>> path;
  path.reserve(size_t(opt.steps));
  drive(aut, opt.steps, opt.seed ^ 0x9e3779b97f4a7c15ull, mid_state,
        [&](int state, int mv) { path.emplace_back(state, mv); });

  // inverse transition matrices on demand
  std::vector<std::array<Eigen::MatrixXd, 4>> inv(aut.size());
  std::vector<std::array<char, 4>> have(aut.size(), {0, 0, 0, 0});
  auto inv_of = [&](int s, int mv) -> const Eigen::MatrixXd& {
    if (!have[s][mv]) {
      inv[s][mv] = to_f(inverse_unimodular(move_of(aut, s, mv).m));
      have[s][mv] = 1;
    }
    return inv[s][mv];
  };

  Eigen::MatrixXd gframe = Eigen::MatrixXd::Identity(r, r);
  std::vector<double> glog(r, 0.0);
  // the backward tautological normalizer is the inverse 2x2 cocycle
  Eigen::MatrixXd gtaut = Eigen::MatrixXd::Identity(2, 2);
  std::vector<double> gtlog(2, 0.0);
  std::array<Eigen::MatrixXd, 4> sl2inv;
  {
    std::array<Eigen::MatrixXd, 4> fwd = sl2_moves();
    for (int m = 0; m < 4; ++m) sl2inv[m] = fwd[m].inverse();
  }
  long long step = 0;
  auto mgs = [](Eigen::MatrixXd& w, std::vector<double>& lg) {
    for (int c = 0; c < w.cols(); ++c) {
      for (int p = 0; p < c; ++p) w.col(c) -= w.col(p).dot(w.col(c)) * w.col(p);
      double nrm = w.col(c).norm();
      lg[size_t(c)] += std::log(nrm);
      w.col(c) /= nrm;
    }
  };
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    gframe = inv_of(it->first, it->second) * gframe;
    gtaut = sl2inv[it->second] * gtaut;
    if (++step % opt.qr_interval == 0 || step == (long long)path.size()) {
      mgs(gframe, glog);
      mgs(gtaut, gtlog);
    }
  }

  SubspaceCheckReport rep;
  const BlockExponents& fb = fwd.block("full");
  rep.forward_exponents = fb.exponents;
  for (int c = 0; c < r; ++c) rep.backward_exponents.push_back(glog[c] / gtlog[0]);

  // symplectic pairings at the midpoint between unit-norm estimated directions
  const IMat& jm = aut.state(mid_state).model->intersection();
  Eigen::MatrixXd j = to_f(jm);

  double resolution = 0.0;
  for (double s : fb.stderrs) resolution = std::max(resolution, 3 * s);
  resolution = std::max(resolution, 0.02);

  for (int i = 0; i < r; ++i)
    for (int c = 0; c < r; ++c) {
      PairingEntry e;
      e.i = i;
      e.j = c;
      e.exp_i = rep.forward_exponents[i];
      e.exp_j = -rep.backward_exponents[c];  // forward exponent of a contracting direction
      e.pairing = std::abs(f.col(i).dot(j * gframe.col(c)));
      double sum = e.exp_i + e.exp_j;
      e.dual = std::abs(sum) <= resolution;
      // a pair is resolved when the exponent sum is clearly zero or nonzero
      e.resolved = e.dual ? std::abs(sum) <= resolution / 3 : std::abs(sum) > resolution;
      if (!e.resolved) ++rep.inconclusive_pairs;
      if (e.resolved && !e.dual)
        rep.max_nondual_pairing = std::max(rep.max_nondual_pairing, e.pairing);
      rep.pairs.push_back(e);
    }
  // nondegeneracy of the top dual pair: pairing between the λ=1 direction and
  // the fastest-contracting direction (exponent estimates near ±1)
  rep.min_dual_pairing = std::abs(f.col(0).dot(j * gframe.col(0)));
  return rep;
}

}  // namespace kz
