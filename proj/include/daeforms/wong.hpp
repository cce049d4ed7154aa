#pragma once

#include <daeforms/subspace.hpp>
#include <daeforms/system.hpp>

#include <string>
#include <vector>

namespace daeforms {

/// Augmented Wong sequences of [E, A, B].
///   V^0 = Q^n,  V^{i+1} = A^{-1}(E V^i + im B)
///   W^0 = {0},  W^{i+1} = E^{-1}(A W^i + im B)
inline std::vector<Subspace> v_sequence(const SystemTriple& sys) {
  const Subspace im_b = image_basis(sys.B);
  std::vector<Subspace> chain{Subspace::full(sys.n())};
  while (true) {
    Subspace next = preimage(sys.A, sum(map(sys.E, chain.back()), im_b));
    if (next == chain.back()) return chain;
    chain.push_back(std::move(next));
  }
}

inline std::vector<Subspace> w_sequence(const SystemTriple& sys) {
  const Subspace im_b = image_basis(sys.B);
  std::vector<Subspace> chain{Subspace::zero(sys.n())};
  while (true) {
    Subspace next = preimage(sys.E, sum(map(sys.A, chain.back()), im_b));
    if (next == chain.back()) return chain;
    chain.push_back(std::move(next));
  }
}

struct WongReport {
  std::vector<Subspace> v_chain;
  std::vector<Subspace> w_chain;
  Subspace v_limit;
  Subspace w_limit;
  /// Index of the first element equal to the limit.
  std::size_t i_star = 0;
  std::size_t j_star = 0;
};

inline WongReport wong_limits(const SystemTriple& sys) {
  WongReport r;
  r.v_chain = v_sequence(sys);
  r.w_chain = w_sequence(sys);
  r.v_limit = r.v_chain.back();
  r.w_limit = r.w_chain.back();
  r.i_star = r.v_chain.size() - 1;
  r.j_star = r.w_chain.size() - 1;
  return r;
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

/// Evaluates the inclusions and equalities that the Wong limits satisfy:
///   E W* in A W* + im B,  A V* in E V* + im B,
///   E(V* n W*) = E V* n (A W* + im B),  A(V* n W*) = (E V* + im B) n A W*,
///   E(V* n W*) + im B = (E V* + im B) n (A W* + im B) = A(V* n W*) + im B.
inline IdentityReport check_limit_identities(const SystemTriple& sys, const WongReport& w) {
  const Subspace im_b = image_basis(sys.B);
  const Subspace& v = w.v_limit;
  const Subspace& ws = w.w_limit;
  const Subspace vw = intersect(v, ws);
  const Subspace ev = map(sys.E, v);
  const Subspace ew = map(sys.E, ws);
  const Subspace av = map(sys.A, v);
  const Subspace aw = map(sys.A, ws);
  const Subspace aw_b = sum(aw, im_b);
  const Subspace ev_b = sum(ev, im_b);
  const Subspace e_vw = map(sys.E, vw);
  const Subspace a_vw = map(sys.A, vw);
  const Subspace middle = intersect(ev_b, aw_b);

  IdentityReport r;
  r.checks.push_back({"E W* in A W* + im B", contained_in(ew, aw_b)});
  r.checks.push_back({"A V* in E V* + im B", contained_in(av, ev_b)});
  r.checks.push_back({"E(V* n W*) = E V* n (A W* + im B)", e_vw == intersect(ev, aw_b)});
  r.checks.push_back({"A(V* n W*) = (E V* + im B) n A W*", a_vw == intersect(ev_b, aw)});
  r.checks.push_back({"E(V* n W*) + im B = (E V* + im B) n (A W* + im B) = A(V* n W*) + im B",
                      sum(e_vw, im_b) == middle && middle == sum(a_vw, im_b)});
  r.checks.push_back({"V* = A^-1(E V* + im B)", preimage(sys.A, ev_b) == v});
  r.checks.push_back({"W* = E^-1(A W* + im B)", preimage(sys.E, aw_b) == ws});
  return r;
}

inline IdentityReport check_limit_identities(const SystemTriple& sys) { return check_limit_identities(sys, wong_limits(sys)); }

/// Wong limits of the input-free pencil s[E, 0] - [A, B], projected onto
/// the state coordinates, must coincide with the limits of [E, A, B].
inline bool augmented_projection_check(const SystemTriple& sys, const WongReport& w) {
  const std::size_t n = sys.n();
  const std::size_t m = sys.m();
  const SystemTriple aug(hcat(sys.E, Mat(sys.l(), m)), hcat(sys.A, sys.B), Mat(sys.l(), 0));
  const WongReport wa = wong_limits(aug);
  const Mat proj = hcat(Mat::identity(n), Mat(n, m));
  return map(proj, wa.v_limit) == w.v_limit && map(proj, wa.w_limit) == w.w_limit;
}

inline bool augmented_projection_check(const SystemTriple& sys) { return augmented_projection_check(sys, wong_limits(sys)); }

}  // namespace daeforms
