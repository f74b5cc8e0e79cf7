#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mono/errors.hpp"

namespace mono {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using IVec = Eigen::VectorXi;

inline constexpr double kPi = 3.14159265358979323846;

enum class GroupFamily { Un, SUn, Sp2, TorusProduct };

std::string family_name(GroupFamily f);

/// A signed permutation of torus coordinates: coord a ↦ sign[a] * coord perm[a].
/// (Multiplicative torus: sign −1 means inversion of that coordinate.)
struct SignedPerm {
  std::vector<int> perm;
  std::vector<int> sign; // +1 or −1

  int dim() const { return static_cast<int>(perm.size()); }
  bool is_involution() const;
  std::vector<Complex> apply(const std::vector<Complex>& t) const;
  IVec apply_weights(const IVec& k) const; // induced action on (co)character lattices
  bool operator==(const SignedPerm&) const = default;
};

/// A supported reductive group with a fixed faithful matrix representation.
///
/// torus_dim is the number of independent multiplicative torus coordinates in
/// the chosen representation: n for U(n)/SU(n) (SU(n) with the product-one
/// constraint), 2 for Sp(2) embedded as diag(x, y, x^{-1}, y^{-1}) in GL4,
/// r for U(1)^r. Cocharacter and character weight vectors live in Z^torus_dim.
struct GroupSpec {
  GroupFamily family = GroupFamily::Un;
  int n = 1;          // family parameter
  int rep_dim = 1;    // N of the faithful representation
  int rank = 1;       // Lie-group rank
  int torus_dim = 1;  // length of weight vectors
  std::vector<IVec> simple_roots;      // in Z^torus_dim
  std::vector<SignedPerm> weyl_generators;

  bool is_abelian() const { return simple_roots.empty(); }
  /// Diagonal of the representation in torus coordinates: entry i carries the
  /// exponent vector e with (torus coords)^e. Stored as rep_dim x torus_dim.
  Eigen::MatrixXi rep_weights;
};

struct Cocharacter {
  IVec weights;
};

struct Character {
  IVec weights;
  std::string name;
};

struct ParabolicData {
  int omitted_root = 0;               // index into simple_roots
  std::vector<int> levi_blocks;       // partition of rep_dim (flag block sizes)
  std::vector<IVec> unipotent_roots;  // roots of u, in Z^torus_dim
  Character stability_char;           // |Ad_L^u|
};

GroupSpec build_group(GroupFamily family, int n);

/// Integer charge matrix m = diag(k_i) of the cocharacter in the representation
/// (real diagonal; the algebra element is mu_* = i·m).
Matrix charge_matrix(const GroupSpec& g, const Cocharacter& mu);

/// mu_* = d/dψ μ(e^{iψ}) at ψ=0 = i·diag(k) in the representation.
Matrix cochar_derivative(const GroupSpec& g, const Cocharacter& mu);

/// μ(e^{iψ}) as a unitary torus element of the representation.
Matrix cochar_eval_angle(const GroupSpec& g, const Cocharacter& mu, double psi);

/// μ(s) for s in C^*, diag(s^{k_i}) in the representation.
Matrix cochar_eval(const GroupSpec& g, const Cocharacter& mu, Complex s);

/// Torus coordinates of an algebra element (linear functionals extending the
/// torus-coordinate duals by zero on root spaces).
Vector torus_coords_of_algebra(const GroupSpec& g, const Matrix& X);

/// tr^χ = dχ(0): linear functional on the algebra of the representation.
Complex char_derivative(const GroupSpec& g, const Character& chi, const Matrix& X);

/// Integer lattice pairing ⟨χ, μ⟩.
long pair_char_cochar(const Character& chi, const Cocharacter& mu);

std::vector<ParabolicData> maximal_parabolics(const GroupSpec& g);

/// Enumerate the Weyl group from generators (closure; sizes ≤ 48 here).
std::vector<SignedPerm> weyl_group_elements(const GroupSpec& g);

/// Orbit of a torus element under the Weyl group. Tuples are compared within
/// tolerance `tol`.
std::vector<std::vector<Complex>> weyl_orbit(const GroupSpec& g,
                                             const std::vector<Complex>& t,
                                             double tol = 1e-12);

/// det character (weights all ones); defined for every supported family.
Character det_character(const GroupSpec& g);

/// Validity checks (throw on violation).
void validate_cocharacter(const GroupSpec& g, const Cocharacter& mu);

} // namespace mono
