#pragma once

#include <array>
#include <map>
#include <memory>

#include "thincascade/boundary_layers.hpp"
#include "thincascade/fem.hpp"
#include "thincascade/regular_expansion.hpp"

namespace thincascade {

using OmegaList = std::map<int, OmegaCoefficient>;
using RegularList = std::map<int, RegularPair>;

/// Truncated rescaled domain Xi cut at |xi| = L together with its mesh.
struct InnerDomain {
  CascadeGeometry geom;
  double L = 0.0;
  TaggedPolygon outline;
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const PointLocator> locator;

  InnerDomain refined() const;
};

double default_inner_target_h(const CascadeGeometry& geom);
InnerDomain make_inner_domain(const CascadeGeometry& geom, double L, double target_h,
                              MesherKind kind = MesherKind::Auto);
InnerDomain make_inner_domain(std::shared_ptr<const Mesh> mesh, const CascadeGeometry& geom, double L);

/// Mean of a field over the cross-section xi = x0.
double cross_section_mean(const ScalarField& field, double x0);

/// Homogeneous solution with linear growth xi/h1 to the left and
/// xi/h2 + C0 to the right.
struct JointCharacteristics {
  ScalarField field_N0;
  double C0 = 0.0;
  double slope_left = 0.0;   // fitted from cross-section means near -L
  double slope_right = 0.0;
  SolveStats stats;
};

JointCharacteristics solve_frak_N0(const InnerDomain& domain, const SolverOptions& options = {});

/// Far-field polynomial Psi_k^(i)(xi, eta) of order k on branch i.
XiEtaPolynomial far_field_psi(int k, int branch, const OmegaList& omegas, const RegularList& regulars);

/// Data of the cut-off inner problem for N~_k.
struct InnerForcing {
  int order = 0;
  double l = 1.0;
  std::array<XiEtaPolynomial, 2> psi;
  std::array<XiEtaPolynomial, 2> psi_xi;
  std::array<XiEtaPolynomial, 2> psi_eta;
  XiEtaPolynomial F;                    // F_k(xi, eta)
  std::array<double, 2> b_plus{};       // wall data: b * xi^{k-2} (1 - chi_i)
  std::array<double, 2> b_minus{};

  double volume(Point p) const;                        // F~_k
  double wall_data(int branch, int sign, double xi) const;  // B~_{k+-}^(i)
  /// Outward flux data for the FEM assembly (top: -B~_+, bottom: +B~_-).
  std::map<BoundaryTag, ScalarFn> neumann_data() const;
  double support_radius() const { return 2.0 + l / 2.0; }
  bool is_zero() const;
};

InnerForcing inner_data_k(int k, const ProblemData& data, const CascadeGeometry& geom, const OmegaList& omegas,
                          const RegularList& regulars);

struct InnerCorrector {
  int order = 0;
  ScalarField field;
  double delta_plus = 0.0;
  double compatibility_defect = 0.0;
  double flatness = 0.0;  // largest change of the cross-section mean between |xi| = L - 1 and L
  InnerForcing forcing;
  SolveStats stats;
};

/// Pure Neumann solve normalized to zero mean over the left cross-section.
/// Throws ConsistencyError when the compatibility defect exceeds 1e-4.
InnerCorrector solve_inner_k(const InnerForcing& forcing, const InnerDomain& domain, const SolverOptions& options = {});

/// delta_k^+ from the volume, wall and Gamma integrals of Green's identity with xi.
double delta_plus_formula_check(const InnerCorrector& corrector, const InnerDomain& domain);

/// N_k = Psi^(1) chi_1 + Psi^(2) chi_2 + N~_k + omega_{k+2}^(1)(0) in (xi, eta).
struct InnerTerm {
  int order = 0;
  double constant = 0.0;
  std::shared_ptr<const InnerCorrector> corrector;  // null for N_0
  std::shared_ptr<const InnerDomain> domain;

  ValueGrad eval(Point p) const;
};

/// Largest nodal |N~(xi, eta) -/+ N~(xi, -eta)| relative to max |N~|, for
/// mirror-symmetric meshes (even = true compares with +).
double symmetry_defect(const ScalarField& field, bool even);

}  // namespace thincascade
