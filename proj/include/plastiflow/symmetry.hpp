#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace plastiflow::symmetry {

// Basis order of the 8-dimensional algebra.
enum Basis { D1 = 0, D2, B, P1, P2, P3, P4, P5 };
inline constexpr int kDim = 8;
extern const std::array<const char*, kDim> kBasisNames;

struct AlgebraElement {
  std::array<double, kDim> coeffs{};

  static AlgebraElement basis(int i);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;
  bool operator==(const AlgebraElement& o) const = default;
  std::string str() const;
};

// Coordinates ordered (x, y, sigma, theta, u, v).
struct Point6 {
  double x = 0, y = 0, sigma = 0, theta = 0, u = 0, v = 0;
  std::array<double, 6> as_array() const { return {x, y, sigma, theta, u, v}; }
  static Point6 from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

using Vec6 = std::array<double, 6>;

// Vector field with affine coefficients: c(p) = A p + b.
struct GeneratorField {
  std::array<Vec6, 6> A{};
  Vec6 b{};
  Vec6 operator()(const Point6& p) const;
};

GeneratorField field_of(const AlgebraElement& a);

// Structure constants: table[i][j] = [e_i, e_j].
using StructureTable = std::array<std::array<AlgebraElement, kDim>, kDim>;
const StructureTable& commutation_table();

AlgebraElement structure_bracket(const AlgebraElement& a, const AlgebraElement& b,
                                 const StructureTable& table = commutation_table());
Vec6 numeric_bracket(const GeneratorField& X, const GeneratorField& Y, const Point6& p);

struct CommutationReport {
  int pairs = 0;
  int samples = 0;
  double max_defect = 0;
  std::vector<std::string> lines;  // one per ordered basis pair
};
CommutationReport verify_commutation_table(int sample_count, std::uint64_t seed,
                                           const StructureTable& table = commutation_table());

// Largest |[a,[b,c]] + [b,[c,a]] + [c,[a,b]]| over basis triples.
double jacobi_defect(const StructureTable& table = commutation_table());

enum class Automorphism { R1, R2 };
AlgebraElement apply_automorphism(Automorphism which, const AlgebraElement& a);
// Largest |R[a,b] - [Ra,Rb]| over basis pairs.
double automorphism_defect(Automorphism which, const StructureTable& table = commutation_table());

using Invariant = std::function<double(const Point6&)>;
double annihilation_defect(const AlgebraElement& gen, const Invariant& inv, const Point6& p,
                           double h = 1e-6);

// One row (or sub-row) of the table of one-dimensional subalgebras.
struct SubalgebraRow {
  std::string id;
  std::string generator_text;
  bool well_formed = true;
  std::string note;  // why a row is excluded
  std::vector<std::string> param_names;
  // Parameter sample generator (deterministic in its seed).
  std::function<std::vector<double>(std::uint64_t)> sample_params;
  std::function<AlgebraElement(const std::vector<double>&)> generator;
  std::function<std::vector<std::pair<std::string, Invariant>>(const std::vector<double>&)> invariants;
  // In-domain random point generator.
  std::function<Point6(std::uint64_t)> sample_point;
};
const std::vector<SubalgebraRow>& one_dim_subalgebras();

struct AnnihilationResult {
  std::string id;
  bool well_formed = true;
  double max_defect = 0;
  int evaluations = 0;
};
std::vector<AnnihilationResult> verify_annihilation(int param_samples, int points,
                                                    std::uint64_t seed);

}  // namespace plastiflow::symmetry
