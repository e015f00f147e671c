#pragma once
// Vector-field (super)algebras over divided powers and generating-function algebras.

#include <map>
#include <optional>
#include <string>

#include "nisforge/divpow.hpp"
#include "nisforge/forms.hpp"

namespace nisforge {

// sum_i c[i] d_i over all indeterminates of the ring (even first, then odd)
using VField = std::vector<Poly>;

VField vf_zero(const Ring& R);
int vf_parity(const VField& D);  // -1 inhomogeneous, 0 for zero
Poly vf_apply(const VField& D, const Poly& f);
VField vf_bracket(const VField& A, const VField& B);
VField vf_scaled(const VField& D, const Scalar& c);
VField vf_add(const VField& A, const VField& B);
bool vf_equal(const VField& A, const VField& B);
// Div D = sum d(f_i)/du_i + sum (-1)^{p(g_j)} d(g_j)/dtheta_j
Poly divergence(const VField& D);
std::string vf_str(const VField& D);

// homogeneous parts of f: [even, odd]
std::array<Poly, 2> split_parity(const Poly& f);

// Indeterminate layouts:
//   contact     t, p_1..p_n, q_1..q_n | theta_1..theta_m
//   poisson     p_1..p_n, q_1..q_n | theta_1..theta_m
//   pericontact q_1..q_n | tau, xi_1..xi_n
//   buttin      q_1..q_n | xi_1..xi_n
enum class Layout { Contact, Poisson, Pericontact, Buttin, Plain };

struct FnRing {
  Ring R;
  Layout layout = Layout::Plain;
  int n = 0;  // number of (p,q) pairs or of q's
  int t() const { return 0; }
  int p(int i) const { return (layout == Layout::Contact ? 1 : 0) + i; }
  int q(int i) const {
    if (layout == Layout::Contact) return 1 + n + i;
    if (layout == Layout::Poisson) return n + i;
    return i;
  }
  int theta(int j) const { return R->m + j; }
  int tau() const { return R->m; }
  int xi(int i) const { return R->m + (layout == Layout::Pericontact ? 1 : 0) + i; }
  int n_theta() const { return R->n; }
};

FnRing contact_ring(const Field& F, int n, std::vector<int> N, int m);
FnRing poisson_ring(const Field& F, int n, std::vector<int> N, int m);
FnRing pericontact_ring(const Field& F, int n, std::vector<int> N);
FnRing buttin_ring(const Field& F, int n, std::vector<int> N);

Poly euler(const FnRing& S, const Poly& f);  // E f over all indeterminates except t (contact) or tau (pericontact)
Poly two_minus_E(const FnRing& S, const Poly& f);
Poly laplacian(const FnRing& S, const Poly& f);  // sum d^2 f / dq_i dxi_i

Poly poisson_bracket(const FnRing& S, const Poly& f, const Poly& g);
Poly buttin_bracket(const FnRing& S, const Poly& f, const Poly& g);
Poly contact_bracket(const FnRing& S, const Poly& f, const Poly& g);
Poly pericontact_bracket(const FnRing& S, const Poly& f, const Poly& g);
// the 3-variable (p, q, t) bracket with triangle f = 2f - p f_p - q f_q
Poly contact_bracket_pqt(const FnRing& S, const Poly& f, const Poly& g);

VField H_field(const FnRing& S, const Poly& f);   // Poisson or contact layouts
VField K_field(const FnRing& S, const Poly& f);   // contact
VField Le_field(const FnRing& S, const Poly& f);  // buttin or pericontact
VField M_field(const FnRing& S, const Poly& f);   // pericontact

// closed-form divergences, to be compared with divergence() of the realized fields
Poly div_K(const FnRing& S, const Poly& f);
Poly div_M(const FnRing& S, const Poly& f);
Poly div_Le(const FnRing& S, const Poly& f);

// b_lambda main deformation of the Buttin bracket; f, g homogeneous in the standard grading
Poly b_lambda_bracket(const FnRing& S, const Poly& f, const Poly& g, const Scalar& lambda);
// singular cocycles of the Buttin algebras: "b0", "b1", "bn"
Poly singular_cocycle(const FnRing& S, const std::string& variant, const Poly& f, const Poly& g);

// ---- symplectic forms ----
struct SymplecticForm {
  enum Kind { Omega0, Omega1, Omega2 } kind = Omega0;
  // Omega1: A-matrix shape "J0" (J_k(0)), "Jkr" (J_{k,r}(lambda)), "C" (C_k)
  std::string shape = "J0";
  int r = 1;
  Scalar lambda;
  Scalar eps;
  int j = 0;  // Omega2: index of u_j in exp(eps u_j)
};
// the 2k x 2k A-matrix for Omega1 (throws on inadmissible parameters)
Mat omega1_matrix(const Field& F, const SymplecticForm& w, const std::vector<int>& N);

// ---- algebras ----
enum class Realization { Functions, Fields, Vas };

struct VectorialAlgebra {
  SuperAlgebra alg;
  std::string series;
  FnRing fr;  // coefficient or function ring
  Realization kind = Realization::Fields;
  std::string bracket;  // for Functions: pb, kb, mb, bb, cb
  int shift = 0;        // element parity = parity of the generating function + shift
  bool mod_constants = false;  // le, sle: functions modulo constants
  std::vector<SVec> elems;  // ambient coordinates of each basis vector
  std::vector<uint64_t> monos;  // ring monomials in ambient order
  // h_omega data: Hamiltonian of each basis vector (in the enlarged ring) and the density omega^k / omega_0^k
  Ring ham_ring;
  std::vector<Poly> ham;
  std::optional<Poly> density;
  std::optional<Poly> volume;  // h of svect_h
  Ring volume_ring;
  std::vector<std::vector<Poly>> omega_inv;  // (omega^{-1})^{ij}
  // omega_2: Hamiltonians enter through dH + eps H du_j
  int twist_index = -1;
  Scalar twist_eps;

  int ambient() const;
  Poly function_of(const SVec& coords) const;  // Functions kind (coords in alg basis)
  VField field_of(const SVec& coords) const;   // Fields kind; Functions kind realized via K/M/H/Le
  SVec ambient_of(const SVec& coords) const;
};

struct VParams {
  Field F;
  std::vector<int> N;  // shearing of the even indeterminates
  int n_odd = 0;
  int n = 0;  // pairs (po, k) or q's (m, le, sb, ...)
  int k = 1;  // half-dimension for h_omega
  Scalar a, b;  // b_{a,b}
  DensityKind density = DensityKind::One;
  int density_index = 0;
  SymplecticForm omega;
  int derived = 0;  // number of derived-algebra steps applied after construction
  int cap = 4000;   // refuse larger algebras
};

VectorialAlgebra build_vectorial(const std::string& series, const VParams& P);
std::vector<std::string> vectorial_series();

// i-th derived algebra keeping the realization
VectorialAlgebra derived_vectorial(const VectorialAlgebra& v, int times = 1);
// subalgebra spanned by elements given in ambient coordinates
VectorialAlgebra vectorial_subalgebra(const VectorialAlgebra& v, const std::vector<SVec>& ambient_vectors,
                                      const std::string& series);

// ---- closed-form NIS ----
struct NisFormula {
  std::optional<BilinearForm> form;
  std::string reason;  // applicability condition or why it is absent
  bool invariant = false, nondegenerate = false;
};
NisFormula nis_formula(const VectorialAlgebra& v);
// half-density pairing int f g vvol in the function basis, regardless of conditions
BilinearForm integral_pairing(const VectorialAlgebra& v, int parity);
// the contact condition 2n+2-m = -4 mod p
bool contact_condition(int n, int m, int p);

// int {F, G}_omega omega^k on random pairs of the algebra (h_omega only); returns number of failures
int hamiltonian_integral_check(const VectorialAlgebra& v, int pairs, uint64_t seed);

// B solves invariance with B(x_i, y_i) = v_i prescribed (vectors in the algebra basis)
std::optional<BilinearForm> form_with_values(const SuperAlgebra& g, const FormSpace& space,
                                             const std::vector<std::tuple<SVec, SVec, Scalar>>& values);

// restriction of the half-density form on k(1;N|m) to functions with no t^(k) xi_all term
struct KasCheck {
  int envelope_dim = 0;
  int radical_dim = 0;
  bool one_in_radical = false;
};
KasCheck kas_restriction(const VectorialAlgebra& k);

// br(2;eps) realized by contact generating functions in k(3;1) at p = 3 and the deform L(2,2) of br(2;-1)
struct L22 {
  SuperAlgebra br;
  SuperAlgebra L;
  std::vector<Poly> functions;  // table functions, basis order y4 y2 y3 h2 h1 x1 y1 x2 x3 x4
};
L22 deform_L22(const Field& F, const Scalar& eps);

// identification of the Cartan-matrix br(2;-1) with the table basis (x_i fixed, y_i rescaled so that
// [x_i, y_i] = h_i) and comparison of the invariant form of L(2,2) with the recipe form
struct L22Comparison {
  bool jacobi_br = false, jacobi_L = false;
  bool identified = false;
  std::vector<Scalar> y_rescale;  // table y_i = y_rescale[i] * image of the Chevalley y_i
  int form_space_dim = 0;         // invariant symmetric forms on L(2,2)
  bool nondegenerate = false;
  bool gram_equal = false;        // after one global scalar
  Mat gram_L, gram_recipe;        // in the Cartan basis order
  std::vector<std::string> names;
};
L22Comparison compare_L22_with_recipe(const Field& F);

}  // namespace nisforge
