#include "kz/cocycle.hpp"

namespace kz {

IMat sl2_of(Gen g) {
  IMat m(2, 2);
  switch (g) {
    case Gen::T:
      m.at(0, 0) = 1; m.at(0, 1) = 1; m.at(1, 1) = 1;
      break;
    case Gen::Tinv:
      m.at(0, 0) = 1; m.at(0, 1) = -1; m.at(1, 1) = 1;
      break;
    case Gen::S:
      m.at(0, 1) = -1; m.at(1, 0) = 1;
      break;
  }
  return m;
}

IMat chain_map_generator(const Origami& o, Gen g) {
  const int n = o.squares();
  const Permutation& h = o.h();
  const Permutation& v = o.v();
  IMat psi(3 * n, 3 * n);
  switch (g) {
    case Gen::T:
      // b_i -> b'_i ; l_i -> d'_i ; d_i -> b'_i + d'_{h(i)}
      for (int i = 0; i < n; ++i) {
        psi.at(edge_b(n, i), edge_b(n, i)) = 1;
        psi.at(edge_d(n, i), edge_l(n, i)) = 1;
        psi.at(edge_b(n, i), edge_d(n, i)) = 1;
        psi.at(edge_d(n, h(i)), edge_d(n, i)) += 1;
      }
      break;
    case Gen::Tinv:
      // b_i -> b'_i ; l_i -> l'_{h⁻¹(i)} - b'_{h⁻¹(i)} ; d_i -> l'_i
      for (int i = 0; i < n; ++i) {
        int hi = h.inverse()(i);
        psi.at(edge_b(n, i), edge_b(n, i)) = 1;
        psi.at(edge_l(n, hi), edge_l(n, i)) = 1;
        psi.at(edge_b(n, hi), edge_l(n, i)) -= 1;
        psi.at(edge_l(n, i), edge_d(n, i)) = 1;
      }
      break;
    case Gen::S:
      // b_i -> l'_{v⁻¹(i)} ; l_i -> -b'_i ; d_i -> l'_{v⁻¹(i)} - b'_{h(i)}
      for (int i = 0; i < n; ++i) {
        int vi = v.inverse()(i);
        psi.at(edge_l(n, vi), edge_b(n, i)) = 1;
        psi.at(edge_b(n, i), edge_l(n, i)) = -1;
        psi.at(edge_l(n, vi), edge_d(n, i)) += 1;
        psi.at(edge_b(n, h(i)), edge_d(n, i)) -= 1;
      }
      break;
  }
  return psi;
}

IMat chain_map_relabel(const Origami& o, const Permutation& sigma) {
  const int n = o.squares();
  IMat psi(3 * n, 3 * n);
  for (int i = 0; i < n; ++i) {
    psi.at(edge_b(n, sigma(i)), edge_b(n, i)) = 1;
    psi.at(edge_l(n, sigma(i)), edge_l(n, i)) = 1;
    psi.at(edge_d(n, sigma(i)), edge_d(n, i)) = 1;
  }
  return psi;
}

IMat induced_h1_matrix(const HomologyModel& src, const HomologyModel& dst, const IMat& psi) {
  // pullback on cochains is psi^T; express pulled-back target basis cocycles
  // in the source basis, then invert to get the forward map on H¹
  IMat pulled = psi.transpose().mul(dst.basis());
  const int r = src.rank();
  IMat p(r, r);
  for (int c = 0; c < r; ++c) {
    std::vector<i64> z(pulled.rows());
    for (int e = 0; e < pulled.rows(); ++e) z[e] = pulled.at(e, c);
    std::vector<i64> co = src.coords(z);
    for (int a = 0; a < r; ++a) p.at(a, c) = co[a];
  }
  IMat m = inverse_unimodular(p);
  IMat check = m.transpose().mul(dst.intersection()).mul(m);
  if (!(check == src.intersection()))
    throw std::logic_error("induced matrix is not symplectic; construction bug");
  return m;
}

IMat taut_block(const HomologyModel& src, const HomologyModel& dst, const IMat& m) {
  std::vector<i64> mu = m.apply(src.taut_u());
  std::vector<i64> mv = m.apply(src.taut_v());
  const int r = dst.rank();
  IMat plane(r, 2);
  for (int i = 0; i < r; ++i) {
    plane.at(i, 0) = dst.taut_u()[i];
    plane.at(i, 1) = dst.taut_v()[i];
  }
  IMat rhs(r, 2);
  for (int i = 0; i < r; ++i) {
    rhs.at(i, 0) = mu[i];
    rhs.at(i, 1) = mv[i];
  }
  auto sol = solve_integer_mat(plane, rhs);
  if (!sol) throw std::logic_error("tautological plane not preserved");
  return *sol;  // 2x2
}

IMat induced_cocycle_matrix(const Origami& o, const HomologyModel& mo, Gen g,
                            const Origami& target, const HomologyModel& mtarget) {
  if (!(apply_generator(o, g) == target))
    throw std::invalid_argument("target is not apply_generator(o,g)");
  IMat m = induced_h1_matrix(mo, mtarget, chain_map_generator(o, g));
  if (!(taut_block(mo, mtarget, m) == sl2_of(g)))
    throw std::logic_error("tautological block mismatch; construction bug");
  return m;
}

AutomorphismKind classify_automorphism(const Origami& o, const Permutation& p) {
  if (p.size() != o.squares()) throw invalid_surface("not an automorphism");
  Permutation pi = p.inverse();
  Permutation hc = p.compose(o.h()).compose(pi);
  Permutation vc = p.compose(o.v()).compose(pi);
  if (hc == o.h() && vc == o.v()) return AutomorphismKind::Translation;
  if (hc == o.h().inverse() && vc == o.v().inverse()) return AutomorphismKind::AntiTranslation;
  throw invalid_surface("not an automorphism");
}

IMat automorphism_matrix(const Origami& o, const HomologyModel& mo, const Permutation& p) {
  AutomorphismKind kind = classify_automorphism(o, p);
  const int n = o.squares();
  IMat psi(3 * n, 3 * n);
  if (kind == AutomorphismKind::Translation) {
    psi = chain_map_relabel(o, p);
  } else {
    // π-rotation: BL(i) lands on TR(p(i))
    for (int i = 0; i < n; ++i) {
      psi.at(edge_b(n, o.v()(p(i))), edge_b(n, i)) = -1;
      psi.at(edge_l(n, o.h()(p(i))), edge_l(n, i)) = -1;
      psi.at(edge_d(n, p(i)), edge_d(n, i)) = -1;
    }
  }
  // automorphism matrices follow the paper-style pullback convention, so the
  // deck eigenvalue bookkeeping matches T*; the forward map is its inverse
  IMat pulled = psi.transpose().mul(mo.basis());
  const int r = mo.rank();
  IMat m(r, r);
  for (int c = 0; c < r; ++c) {
    std::vector<i64> z(pulled.rows());
    for (int e = 0; e < pulled.rows(); ++e) z[e] = pulled.at(e, c);
    std::vector<i64> co = mo.coords(z);
    for (int a = 0; a < r; ++a) m.at(a, c) = co[a];
  }
  IMat check = m.transpose().mul(mo.intersection()).mul(m);
  if (!(check == mo.intersection()))
    throw std::logic_error("automorphism matrix not symplectic");
  return m;
}

}  // namespace kz
