#pragma once

#include "kkit/chevalley.hpp"
#include "kkit/root_datum.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kkit {

// Killing-type pairing on X = X*(T), the highest short root, the
// rescaled pairing and the induced map tau : X -> Q (x) X_*(T).
// Requires a single quasi-simple simply connected factor.
struct GrForm {
  IntMatrix kil;              // (b_i, b_j)_Kil on the X* basis
  Int theta_norm = 0;         // (theta, theta)_Kil
  std::size_t theta_root = 0; // index of the highest short root
  RatMatrix tau;              // 2 K / (theta, theta)
};
GrForm gr_form(const RootDatum& rd);

struct TauRootAudit {
  bool coroot_identity = false;       // tau(alpha) = |alpha|^2 coroot, every root
  bool differential_identity = false; // (d alpha) o tau = |alpha|^2 h_alpha
  bool w_equivariant = false;         // tau intertwines the reflections
  bool invertible_mod_p = false;      // cleared matrix invertible (p > 0)
  bool pass(std::uint64_t p) const {
    return coroot_identity && differential_identity && w_equivariant &&
           (p == 0 || invertible_mod_p);
  }
};
// Exact over Q; the mod-p leg needs p very good (ConditionViolation at a
// bad p, where the squared lengths may vanish).
TauRootAudit tau_root_audit(const RootDatum& rd, const GrForm& gf, std::uint64_t p);

// --- V-valued polynomial functions on Sigma = e + t ----------------------

// exponent vectors packed 8 bits per variable (rank <= 8, degree < 256)
using MonoKey = std::uint64_t;
MonoKey mono_pack(const std::vector<unsigned>& exps);
std::vector<unsigned> mono_unpack(MonoKey key, std::size_t rank);
unsigned mono_degree(MonoKey key);

struct VPoly {
  std::map<MonoKey, std::vector<std::uint64_t>> terms; // zero terms pruned
  bool operator==(const VPoly& o) const { return terms == o.terms; }
  unsigned degree() const;
};
using SPoly = std::map<MonoKey, std::uint64_t>;

// Operators of one simple root: the reflection on t, the linear form
// d(alpha), and the divided powers of ad(e_{-alpha}) on V = adjoint.
struct SimpleRootOps {
  FpMatrix reflection;                 // on t-coordinates
  std::vector<std::uint64_t> dalpha;   // row vector on t-coordinates
  std::vector<FpMatrix> divided_powers;
  std::size_t unipotent_degree() const { return divided_powers.size() - 1; }
};

struct TwistedModule {
  const ChevalleyAlgebra* alg = nullptr;
  std::uint64_t p = 0;
  std::size_t dim_v = 0;
  std::size_t rank = 0;
  unsigned degree_limit = 0; // D: nominal degree of module elements
  unsigned cap = 0;          // hard cap; operations refuse to truncate silently
  std::vector<SimpleRootOps> simples;
};

// cap < 0 sizes the working cap to survive the longest braid word.
TwistedModule make_twisted_module(const ChevalleyAlgebra& alg, std::uint64_t p,
                                  unsigned degree_limit, int cap = -1);

// (s_alpha . f)(e + h) = u_{-alpha}(-(d alpha)(h)) . f(e + s_alpha h);
// throws TruncationOverflow when the result would exceed the cap.
VPoly twisted_action(const TwistedModule& module, std::size_t simple, const VPoly& f);

VPoly constant_function(const TwistedModule& module, const std::vector<std::uint64_t>& v);
VPoly basis_function(const TwistedModule& module, std::size_t v_index, MonoKey mono);
VPoly scalar_multiply(const TwistedModule& module, const SPoly& g, const VPoly& f);

// ordinary (untwisted) action on scalar polynomials: g -> g o s_alpha
SPoly scalar_reflect(const TwistedModule& module, std::size_t simple, const SPoly& g);

struct WactionAudit {
  bool applicable = false;
  std::string not_applicable_reason;
  std::size_t involution_checked = 0;
  bool involution_pass = false;
  std::size_t braid_checked = 0;
  bool braid_pass = false;
  bool scalar_braid_pass = false;       // reflection matrices brade exactly over Z
  bool formula_equivalence_pass = false; // geometric formula pulls back exactly
  bool invariant_linearity_pass = false; // action is O(t)^W-linear
  bool pass() const {
    return applicable && involution_pass && braid_pass && scalar_braid_pass &&
           formula_equivalence_pass && invariant_linearity_pass;
  }
};

// Involution on the full truncated basis; braid words on every constant
// function plus seeded monomial samples (the action is semilinear over
// the scalar reflection action, so constants + the exact scalar-level
// braid identity cover the whole module); formula equivalence as an
// exact rational identity. Envelope: rank <= rank_cap (braid words stay
// short), degree_limit <= 10 (ConfigError beyond).
WactionAudit waction_audit(const ChevalleyAlgebra& alg, const GrForm& gf, std::uint64_t p,
                           unsigned degree_limit, std::uint64_t seed,
                           std::size_t braid_samples = 8, std::size_t rank_cap = 2);

// dim of the W-invariants in degree <= D, two independent routes: a
// linear solve of (s_alpha - 1) f = 0, and the image of the averaging
// projector (needs p coprime to |W|).
std::size_t invariant_dim_solve(const TwistedModule& module, unsigned d);
std::size_t invariant_dim_average(const TwistedModule& module, unsigned d);

} // namespace kkit
