#pragma once
// Truncated loop superalgebras, residue forms, central cocycles and the stringy svect_alpha^L(1|2).

#include "nisforge/forms.hpp"

namespace nisforge {

// finite window of an infinite graded algebra: brackets are exact when level(i) + level(j) stays in [lo, hi]
struct Truncated {
  SuperAlgebra alg;
  std::vector<int> level;
  int lo = 0, hi = 0;
  bool exact(int i, int j) const {
    int s = level[i] + level[j];
    return s >= lo && s <= hi;
  }
};

struct LoopAlgebra : Truncated {
  SuperAlgebra target;
  BilinearForm tr;       // "tr"(xy) on the target
  int order = 1;         // of the twist
  std::vector<SVec> vec; // target element of each basis vector; level = power of t
};

// psi: matrix of an automorphism (columns = images) of order m with eigenvalues zeta^k; empty psi = no twist.
// throws std::invalid_argument if psi is not an automorphism or its eigenspaces do not span.
LoopAlgebra loop_build(const SuperAlgebra& target, const BilinearForm& tr, int window, const Mat& psi = {},
                       int order = 1, const Scalar& zeta = Scalar());
// levels lo..hi
LoopAlgebra loop_build_range(const SuperAlgebra& target, const BilinearForm& tr, int lo, int hi,
                             const Mat& psi = {}, int order = 1, const Scalar& zeta = Scalar());

// parity automorphism x -> (-1)^{p(x)} x
Mat parity_automorphism(const SuperAlgebra& g);

// coefficient of t^power in tr(ab): (x t^i, y t^j) = delta_{i+j,power} tr(x, y).
// power = -1 is the literal residue; it is the one that pairs anything when tr is odd and the twist is the parity.
BilinearForm residue_nis(const LoopAlgebra& L, int power = 0);
// Res tr(f dg): c(x t^m, y t^n) = n delta_{m+n,0} tr(x, y)
Scalar central_cocycle(const LoopAlgebra& L, const SVec& f, const SVec& g);
Mat central_cocycle_matrix(const LoopAlgebra& L);

struct InteriorReport {
  bool ok = true;
  long checked = 0;
  std::optional<Triple> witness;
};
// B([x,y],z) = B(x,[y,z]) on triples whose brackets stay exact
InteriorReport interior_invariance(const Truncated& T, const BilinearForm& B);
// super antisymmetry, then c(x,[y,z]) = c([x,y],z) + (-1)^{p(x)p(y)} c(y,[x,z]) on interior triples
InteriorReport interior_cocycle_check(const Truncated& T, const Mat& c);

// g + K z with [x,y] += c(x,y) z; z gets level 0 and the given degree
Truncated central_extension(const Truncated& T, const Mat& c, int parity, const std::string& name = "z",
                            int degree = 0);

// ---- svect_alpha^L(1|2) ----
struct Stringy : Truncated {
  Scalar alpha;
  std::vector<std::string> family;  // L E F G lambda eps phi gamma
  std::vector<int> index;           // n
  bool membership = false;          // alpha f = -t Div D on every basis element
  Mat E_alpha;                      // the outer derivation on the window
  Mat cocycle;                      // normalized solution of the cocycle equations
  int cocycle_space = 0;            // dimension of the interior solution space
};
// basis L_n ... gamma_n for |n| <= window, principal degree stored as the basis degree.
// throws if alpha is an integer.
Stringy svect_alpha_build(const Field& F, const Scalar& alpha, int window);
// closed-form values quoted for the nontrivial cocycle
Scalar stringy_cocycle_L(const Scalar& alpha, int m);
Scalar stringy_cocycle_G(int m);

// ---- k^L(1|n): Laurent contact superalgebra on generating functions ----
Truncated contact_loop(const Field& F, int n_odd, int window);
// Res Berezin integral of f g (half-density pairing; invariant for n_odd = 6)
BilinearForm contact_residue_pairing(const Truncated& T, int n_odd);

struct GradedSearch {
  FormSpace space;
  NisResult nis;
  std::string certificate;
};
// forms pairing degrees summing to 0, invariant on interior triples
GradedSearch graded_nis_search(const Truncated& T, uint64_t seed = 7);

}  // namespace nisforge
