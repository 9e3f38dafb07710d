#include "plastiflow/symmetry.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "plastiflow/errors.hpp"

namespace plastiflow::symmetry {

const std::array<const char*, kDim> kBasisNames = {"D1", "D2", "B", "P1", "P2", "P3", "P4", "P5"};

AlgebraElement AlgebraElement::basis(int i) {
  AlgebraElement e;
  e.coeffs[i] = 1.0;
  return e;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r;
  for (int i = 0; i < kDim; ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r;
  for (int i = 0; i < kDim; ++i) r.coeffs[i] = coeffs[i] - o.coeffs[i];
  return r;
}

AlgebraElement AlgebraElement::operator*(double s) const {
  AlgebraElement r;
  for (int i = 0; i < kDim; ++i) r.coeffs[i] = coeffs[i] * s;
  return r;
}

std::string AlgebraElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kDim; ++i) {
    double c = coeffs[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    double m = std::fabs(c);
    if (m != 1) os << m << "*";
    os << kBasisNames[i];
    first = false;
  }
  return first ? "0" : os.str();
}

Vec6 GeneratorField::operator()(const Point6& p) const {
  auto q = p.as_array();
  Vec6 r = b;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i] += A[i][j] * q[j];
  return r;
}

namespace {

enum Coord { X = 0, Y, SIGMA, THETA, U, V };

GeneratorField basis_field(int i) {
  GeneratorField f;
  switch (i) {
    case D1: f.A[X][X] = 1; f.A[Y][Y] = 1; break;
    case D2: f.A[U][U] = 1; f.A[V][V] = 1; break;
    case B: f.A[U][Y] = -1; f.A[V][X] = 1; break;
    case P1: f.b[X] = 1; break;
    case P2: f.b[Y] = 1; break;
    case P3: f.b[SIGMA] = 1; break;
    case P4: f.b[U] = 1; break;
    case P5: f.b[V] = 1; break;
  }
  return f;
}

StructureTable build_table() {
  StructureTable t{};
  auto set = [&](int i, int j, AlgebraElement e) {
    t[i][j] = e;
    t[j][i] = e * -1.0;
  };
  auto e = [](int i) { return AlgebraElement::basis(i); };
  set(D1, B, e(B));
  set(D1, P1, e(P1) * -1.0);
  set(D1, P2, e(P2) * -1.0);
  set(D2, B, e(B) * -1.0);
  set(D2, P4, e(P4) * -1.0);
  set(D2, P5, e(P5) * -1.0);
  set(B, P1, e(P5) * -1.0);
  set(B, P2, e(P4));
  return t;
}

}  // namespace

GeneratorField field_of(const AlgebraElement& a) {
  GeneratorField f;
  for (int k = 0; k < kDim; ++k) {
    if (a.coeffs[k] == 0) continue;
    GeneratorField g = basis_field(k);
    for (int i = 0; i < 6; ++i) {
      f.b[i] += a.coeffs[k] * g.b[i];
      for (int j = 0; j < 6; ++j) f.A[i][j] += a.coeffs[k] * g.A[i][j];
    }
  }
  return f;
}

const StructureTable& commutation_table() {
  static const StructureTable table = build_table();
  return table;
}

AlgebraElement structure_bracket(const AlgebraElement& a, const AlgebraElement& b,
                                 const StructureTable& table) {
  AlgebraElement r;
  for (int i = 0; i < kDim; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < kDim; ++j) {
      if (b.coeffs[j] == 0) continue;
      r = r + table[i][j] * (a.coeffs[i] * b.coeffs[j]);
    }
  }
  return r;
}

Vec6 numeric_bracket(const GeneratorField& X, const GeneratorField& Y, const Point6& p) {
  // For affine fields the Jacobian of c(p) = A p + b is A, exactly.
  Vec6 xp = X(p), yp = Y(p), r{};
  for (int i = 0; i < 6; ++i) {
    double s = 0;
    for (int j = 0; j < 6; ++j) s += Y.A[i][j] * xp[j] - X.A[i][j] * yp[j];
    r[i] = s;
  }
  return r;
}

CommutationReport verify_commutation_table(int sample_count, std::uint64_t seed,
                                           const StructureTable& table) {
  if (sample_count < 1) throw ParamError("sample_count must be >= 1");
  CommutationReport rep;
  rep.samples = sample_count;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<Point6> pts;
  for (int s = 0; s < sample_count; ++s) {
    Point6 p{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
    pts.push_back(p);
  }
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      auto ei = AlgebraElement::basis(i), ej = AlgebraElement::basis(j);
      AlgebraElement br = structure_bracket(ei, ej, table);
      GeneratorField fb = field_of(br);
      GeneratorField fi = field_of(ei), fj = field_of(ej);
      double pair_defect = 0;
      for (const auto& p : pts) {
        Vec6 num = numeric_bracket(fi, fj, p);
        Vec6 ref = fb(p);
        for (int c = 0; c < 6; ++c) pair_defect = std::max(pair_defect, std::fabs(num[c] - ref[c]));
      }
      rep.max_defect = std::max(rep.max_defect, pair_defect);
      ++rep.pairs;
      std::ostringstream os;
      os << "[" << kBasisNames[i] << "," << kBasisNames[j] << "] = " << br.str()
         << "  defect=" << pair_defect;
      rep.lines.push_back(os.str());
    }
  }
  return rep;
}

double jacobi_defect(const StructureTable& table) {
  double worst = 0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) {
        auto ea = AlgebraElement::basis(a), eb = AlgebraElement::basis(b),
             ec = AlgebraElement::basis(c);
        auto s = structure_bracket(ea, structure_bracket(eb, ec, table), table) +
                 structure_bracket(eb, structure_bracket(ec, ea, table), table) +
                 structure_bracket(ec, structure_bracket(ea, eb, table), table);
        for (double v : s.coeffs) worst = std::max(worst, std::fabs(v));
      }
  return worst;
}

AlgebraElement apply_automorphism(Automorphism which, const AlgebraElement& a) {
  AlgebraElement r = a;
  if (which == Automorphism::R1) {
    r.coeffs[B] = -r.coeffs[B];
    r.coeffs[P1] = -r.coeffs[P1];
    r.coeffs[P2] = -r.coeffs[P2];
  } else {
    r.coeffs[B] = -r.coeffs[B];
    r.coeffs[P4] = -r.coeffs[P4];
    r.coeffs[P5] = -r.coeffs[P5];
  }
  return r;
}

double automorphism_defect(Automorphism which, const StructureTable& table) {
  double worst = 0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      auto ei = AlgebraElement::basis(i), ej = AlgebraElement::basis(j);
      auto lhs = apply_automorphism(which, structure_bracket(ei, ej, table));
      auto rhs = structure_bracket(apply_automorphism(which, ei), apply_automorphism(which, ej), table);
      for (int k = 0; k < kDim; ++k) worst = std::max(worst, std::fabs(lhs.coeffs[k] - rhs.coeffs[k]));
    }
  return worst;
}

double annihilation_defect(const AlgebraElement& gen, const Invariant& inv, const Point6& p,
                           double h) {
  auto q = p.as_array();
  double scale = 1.0;
  for (double c : q) scale = std::max(scale, std::fabs(c));
  double step = h * scale;
  Vec6 dir = field_of(gen)(p);
  std::array<double, 6> qp{}, qm{};
  for (int i = 0; i < 6; ++i) {
    qp[i] = q[i] + step * dir[i];
    qm[i] = q[i] - step * dir[i];
  }
  double fp = inv(Point6::from_array(qp));
  double fm = inv(Point6::from_array(qm));
  if (!std::isfinite(fp) || !std::isfinite(fm))
    throw DomainError("invariant undefined on the finite-difference stencil");
  return std::fabs((fp - fm) / (2 * step));
}

namespace {

struct Sampler {
  bool positive_x = false;
  bool positive_u = false;
  Point6 operator()(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.1, 3.0), any(-3.0, 3.0);
    std::bernoulli_distribution sign(0.5);
    auto away = [&](bool positive) {
      double m = mag(rng);
      return (positive || sign(rng)) ? m : -m;
    };
    Point6 p;
    p.x = away(positive_x);
    p.y = away(false);
    p.sigma = any(rng);
    p.theta = any(rng);
    p.u = away(positive_u);
    p.v = away(false);
    return p;
  }
};

// Random parameters in [lo, hi] per slot, deterministic in the seed.
std::function<std::vector<double>(std::uint64_t)> params_in(std::vector<std::pair<double, double>> ranges) {
  return [ranges](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    for (auto [lo, hi] : ranges) out.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
    return out;
  };
}

AlgebraElement el(std::initializer_list<std::pair<int, double>> terms) {
  AlgebraElement a;
  for (auto [i, c] : terms) a.coeffs[i] += c;
  return a;
}

using Inv = std::vector<std::pair<std::string, Invariant>>;

std::vector<SubalgebraRow> build_rows() {
  std::vector<SubalgebraRow> rows;
  Sampler plain, xpos{true, false}, upos{false, true};

  // a^alpha is treated as one free coefficient A throughout.
  rows.push_back({"L1,1a", "alpha*P1 + A*P2 + beta*P3 (a != 0)", true, "",
                  {"alpha", "A", "beta"}, params_in({{0.5, 2}, {0.5, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) { return el({{P1, q[0]}, {P2, q[1]}, {P3, q[2]}}); },
                  [](const std::vector<double>& q) {
                    double al = q[0], A = q[1], be = q[2];
                    return Inv{{"xi", [=](const Point6& p) { return -A * p.x + al * p.y; }},
                               {"F", [](const Point6& p) { return p.u; }},
                               {"G", [](const Point6& p) { return p.v; }},
                               {"H", [=](const Point6& p) { return p.sigma - be * (p.x + p.y) / (al + A); }}};
                  },
                  plain});
  rows.push_back({"L1,1b", "P1 + beta*P3 (a = 0, alpha = 1)", true, "",
                  {"beta"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{P1, 1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double be = q[0];
                    return Inv{{"xi", [](const Point6& p) { return p.y; }},
                               {"F", [](const Point6& p) { return p.u; }},
                               {"G", [](const Point6& p) { return p.v; }},
                               {"H", [=](const Point6& p) { return p.sigma - be * p.x; }}};
                  },
                  plain});
  rows.push_back({"L1,2a", "alpha*P1 + A*P2 + beta*P3 + alpha*P4 + (1-alpha)*P5", true, "",
                  {"alpha", "A", "beta"}, params_in({{0.5, 2}, {0.5, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) {
                    return el({{P1, q[0]}, {P2, q[1]}, {P3, q[2]}, {P4, q[0]}, {P5, 1 - q[0]}});
                  },
                  [](const std::vector<double>& q) {
                    double al = q[0], A = q[1], be = q[2], s = al + A;
                    return Inv{{"xi", [=](const Point6& p) { return A * p.x - al * p.y; }},
                               {"F", [=](const Point6& p) { return p.u - al * (p.x + p.y) / s; }},
                               {"G", [=](const Point6& p) { return p.v - (1 - al) * (p.x + p.y) / s; }},
                               {"H", [=](const Point6& p) { return p.sigma - be * (p.x + p.y) / s; }}};
                  },
                  plain});
  rows.push_back({"L1,2b", "P1 - P2 + beta*P3 + P4 (alpha = 1 = -a)", false,
                  "H = sigma - x is invariant only when beta = 1",
                  {"beta"}, params_in({{-2, 0.5}}),
                  [](const std::vector<double>& q) { return el({{P1, 1}, {P2, -1}, {P3, q[0]}, {P4, 1}}); },
                  [](const std::vector<double>&) {
                    return Inv{{"xi", [](const Point6& p) { return p.x + p.y; }},
                               {"F", [](const Point6& p) { return -p.x + p.u; }},
                               {"G", [](const Point6& p) { return p.v; }},
                               {"H", [](const Point6& p) { return p.sigma - p.x; }}};
                  },
                  plain});
  rows.push_back({"L1,3a", "B + alpha*P1 + A*P2 + beta*P3", false,
                  "F and G are not annihilated: denominators read A^2 + alpha instead of A^2 + alpha^2 "
                  "and G lacks the factor 1/2",
                  {"alpha", "A", "beta"}, params_in({{1.5, 2.5}, {0.5, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) { return el({{B, 1}, {P1, q[0]}, {P2, q[1]}, {P3, q[2]}}); },
                  [](const std::vector<double>& q) {
                    double al = q[0], A = q[1], be = q[2];
                    return Inv{{"xi", [=](const Point6& p) { return A * p.x - al * p.y; }},
                               {"F", [=](const Point6& p) {
                                  return p.u - (A * (p.x * p.x - p.y * p.y) - 2 * al * p.x * p.y) / (2 * (A * A + al));
                                }},
                               {"G", [=](const Point6& p) {
                                  return p.v - (al * (p.x * p.x - p.y * p.y) + 2 * A * p.x * p.y) / (A * A + al);
                                }},
                               {"H", [=](const Point6& p) { return p.sigma - be * (p.x + p.y) / (al + A); }}};
                  },
                  plain});
  rows.push_back({"L1,3b", "B + P1 - P2 + beta*P3 (alpha = 1 = -a)", false,
                  "G = x^2/2 + v is mapped to 2x, not 0",
                  {"beta"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{B, 1}, {P1, 1}, {P2, -1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double be = q[0];
                    return Inv{{"xi", [](const Point6& p) { return p.x + p.y; }},
                               {"F", [](const Point6& p) { return p.x * (p.x / 2 + p.y) + p.u; }},
                               {"G", [](const Point6& p) { return p.x * p.x / 2 + p.v; }},
                               {"H", [=](const Point6& p) { return p.sigma - be * p.x; }}};
                  },
                  plain});
  rows.push_back({"L1,4a", "D2 + alpha*P1 + A*P2 + b*P3 (a != -alpha)", false,
                  "H = sigma - (x+y)/(alpha+A) lacks the factor b",
                  {"alpha", "A", "b"}, params_in({{0.5, 2}, {0.5, 2}, {1.5, 3}}),
                  [](const std::vector<double>& q) { return el({{D2, 1}, {P1, q[0]}, {P2, q[1]}, {P3, q[2]}}); },
                  [](const std::vector<double>& q) {
                    double al = q[0], A = q[1], s = al + A;
                    return Inv{{"xi", [=](const Point6& p) { return -A * p.x + al * p.y; }},
                               {"F", [=](const Point6& p) { return p.u * std::exp(-(p.x + p.y) / s); }},
                               {"G", [=](const Point6& p) { return p.v * std::exp(-(p.x + p.y) / s); }},
                               {"H", [=](const Point6& p) { return p.sigma - (p.x + p.y) / s; }}};
                  },
                  plain});
  rows.push_back({"L1,4b", "D2 + P1 - P2 + b*P3 (alpha = 1 = -a)", true, "",
                  {"b"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{D2, 1}, {P1, 1}, {P2, -1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double b = q[0];
                    return Inv{{"xi", [](const Point6& p) { return p.x + p.y; }},
                               {"F", [](const Point6& p) { return p.u * std::exp(-p.x); }},
                               {"G", [](const Point6& p) { return p.v * std::exp(-p.x); }},
                               {"H", [=](const Point6& p) { return p.sigma - b * p.x; }}};
                  },
                  plain});
  rows.push_back({"L1,5", "D1 + a*D2 + b*P3", true, "",
                  {"a", "b"}, params_in({{-2, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) { return el({{D1, 1}, {D2, q[0]}, {P3, q[1]}}); },
                  [](const std::vector<double>& q) {
                    double a = q[0], b = q[1];
                    return Inv{{"xi", [](const Point6& p) { return p.y / p.x; }},
                               {"F", [=](const Point6& p) { return std::pow(p.x, -a) * p.u; }},
                               {"G", [=](const Point6& p) { return std::pow(p.x, -a) * p.v; }},
                               {"H", [=](const Point6& p) { return p.sigma - b * std::log(p.x); }}};
                  },
                  xpos});
  rows.push_back({"L1,6", "D1 + D2 + B + b*P3", true, "",
                  {"b"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{D1, 1}, {D2, 1}, {B, 1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double b = q[0];
                    return Inv{{"xi", [](const Point6& p) { return p.y / p.x; }},
                               {"F", [](const Point6& p) { return p.u / p.x + p.y / p.x * std::log(p.x); }},
                               {"G", [](const Point6& p) { return p.v / p.x - std::log(p.x); }},
                               {"H", [=](const Point6& p) { return p.sigma - b * std::log(p.x); }}};
                  },
                  xpos});
  rows.push_back({"L1,7", "D1 + a*P3 + alpha*P4 + A*P5", true, "",
                  {"a", "alpha", "A"}, params_in({{-2, 2}, {-2, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) { return el({{D1, 1}, {P3, q[0]}, {P4, q[1]}, {P5, q[2]}}); },
                  [](const std::vector<double>& q) {
                    double a = q[0], al = q[1], A = q[2];
                    return Inv{{"xi", [](const Point6& p) { return p.y / p.x; }},
                               {"F", [=](const Point6& p) { return p.u - al * std::log(p.x); }},
                               {"G", [=](const Point6& p) { return p.v - A * std::log(p.x); }},
                               {"H", [=](const Point6& p) { return p.sigma - a * std::log(p.x); }}};
                  },
                  xpos});
  rows.push_back({"L1,8", "alpha*P4 + A*P5 + beta*P3", true, "",
                  {"alpha", "A", "beta"}, params_in({{-2, 2}, {-2, 2}, {-2, 2}}),
                  [](const std::vector<double>& q) { return el({{P4, q[0]}, {P5, q[1]}, {P3, q[2]}}); },
                  [](const std::vector<double>& q) {
                    double al = q[0], A = q[1], be = q[2];
                    return Inv{{"xi1", [](const Point6& p) { return p.x; }},
                               {"xi2", [](const Point6& p) { return p.y; }},
                               {"F", [=](const Point6& p) { return (al + A) * p.sigma - be * (p.u + p.v); }},
                               {"G", [=](const Point6& p) { return al * p.v - A * p.u; }}};
                  },
                  plain});
  rows.push_back({"L1,9", "D2 + b*P3", true, "",
                  {"b"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{D2, 1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double b = q[0];
                    return Inv{{"xi1", [](const Point6& p) { return p.x; }},
                               {"xi2", [](const Point6& p) { return p.y; }},
                               {"F", [=](const Point6& p) { return p.sigma - b * std::log(p.u); }},
                               {"G", [](const Point6& p) { return p.u / p.v; }}};
                  },
                  upos});
  rows.push_back({"L1,10", "B + alpha*P3", true, "",
                  {"alpha"}, params_in({{-2, 2}}),
                  [](const std::vector<double>& q) { return el({{B, 1}, {P3, q[0]}}); },
                  [](const std::vector<double>& q) {
                    double al = q[0];
                    return Inv{{"xi1", [](const Point6& p) { return p.x; }},
                               {"xi2", [](const Point6& p) { return p.y; }},
                               {"F", [=](const Point6& p) { return al / p.y * p.u + p.sigma; }},
                               {"G", [](const Point6& p) { return p.x / p.y * p.u + p.v; }}};
                  },
                  plain});
  return rows;
}

}  // namespace

const std::vector<SubalgebraRow>& one_dim_subalgebras() {
  static const std::vector<SubalgebraRow> rows = build_rows();
  return rows;
}

std::vector<AnnihilationResult> verify_annihilation(int param_samples, int points,
                                                    std::uint64_t seed) {
  std::vector<AnnihilationResult> out;
  std::uint64_t s = seed;
  for (const auto& row : one_dim_subalgebras()) {
    AnnihilationResult r{row.id, row.well_formed, 0.0, 0};
    for (int ps = 0; ps < param_samples; ++ps) {
      auto q = row.sample_params(++s * 7919);
      auto gen = row.generator(q);
      auto invs = row.invariants(q);
      for (int k = 0; k < points; ++k) {
        Point6 p = row.sample_point(++s * 104729);
        for (const auto& [name, f] : invs) {
          r.max_defect = std::max(r.max_defect, annihilation_defect(gen, f, p));
          ++r.evaluations;
        }
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace plastiflow::symmetry
