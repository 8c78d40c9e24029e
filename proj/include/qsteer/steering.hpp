#pragma once

#include <cmath>

#include "qsteer/errors.hpp"
#include "qsteer/measures.hpp"
#include "qsteer/states.hpp"

namespace qsteer {

// Concurrence above this counts as witnessed entanglement; boundary points
// fall on the not-witnessed side.
inline constexpr double kWitnessTol = 1e-9;

// The witness is one-sided: a separable constructed state leaves the
// steering question open, it never certifies unsteerability.
enum class Witness { Witnessed, Undetermined };

enum class Region { NeitherWitnessed, OneWayAToB, OneWayBToA, BothWay };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::NeitherWitnessed: return "neither-witnessed";
    case Region::OneWayAToB: return "one-way-A-to-B";
    case Region::OneWayBToA: return "one-way-B-to-A";
    case Region::BothWay: return "both-way";
  }
  return "?";
}

inline const char* to_string(Witness w) {
  return w == Witness::Witnessed ? "witnessed" : "undetermined";
}

struct SteeringVerdict {
  double c_tau1 = 0.0;  // concurrence of tau1; > 0 witnesses Bob -> Alice
  double c_tau2 = 0.0;  // concurrence of tau2; > 0 witnesses Alice -> Bob
  Witness bob_steers_alice = Witness::Undetermined;
  Witness alice_steers_bob = Witness::Undetermined;
  Region region = Region::NeitherWitnessed;
};

// Entanglement-detection steering witness: build tau1 and tau2 from rho and
// read the steering directions off their concurrences.
inline SteeringVerdict witness_steering(const DensityMatrix& rho,
                                        double mu1 = kInvSqrt3,
                                        double mu2 = kInvSqrt3) {
  SteeringVerdict v;
  v.c_tau1 = concurrence(construct_tau1(rho, mu1));
  v.c_tau2 = concurrence(construct_tau2(rho, mu2));
  const bool bob = v.c_tau1 > kWitnessTol;
  const bool alice = v.c_tau2 > kWitnessTol;
  v.bob_steers_alice = bob ? Witness::Witnessed : Witness::Undetermined;
  v.alice_steers_bob = alice ? Witness::Witnessed : Witness::Undetermined;
  if (bob && alice)
    v.region = Region::BothWay;
  else if (alice)
    v.region = Region::OneWayAToB;
  else if (bob)
    v.region = Region::OneWayBToA;
  else
    v.region = Region::NeitherWitnessed;
  return v;
}

// Alpha threshold above which tau1(alpha, theta) is entangled at
// mu1 = 1/sqrt(3):
//   (sqrt3 - sqrt3*cos(4t) - 2*sqrt(7 - 4*cos(4t) + cos^2(4t))) / (cos(4t) - 5).
// Decreases from 1 (theta -> 0) to 1/sqrt(3) (theta = pi/4); theta = 0 is
// outside the family's steerable range and returns the limit value 1.
inline double boundary_bob_to_alice(double theta) {
  require_theta_range(theta);
  if (theta == 0.0) return 1.0;
  const double c4 = std::cos(4.0 * theta);
  const double s3 = std::sqrt(3.0);
  const double num = s3 - s3 * c4 - 2.0 * std::sqrt(7.0 - 4.0 * c4 + c4 * c4);
  return num / (c4 - 5.0);
}

// Alpha threshold above which tau2(alpha, theta) is entangled at
// mu2 = 1/sqrt(3); independent of theta.
inline double boundary_alice_to_bob() { return kInvSqrt3; }

// Alpha interval (lower, upper] in which only the Alice -> Bob direction is
// witnessed. Degenerates to empty at theta = pi/4.
struct OneWayBand {
  double lower = 0.0;
  double upper = 0.0;
  bool empty() const { return !(upper > lower); }
};

inline OneWayBand one_way_band(double theta) {
  if (!(theta > 0.0 && theta <= kQuarterPi))
    throw ParameterError("one_way_band requires theta in (0, pi/4]");
  return OneWayBand{boundary_alice_to_bob(), boundary_bob_to_alice(theta)};
}

// Uniform-ansatz infinite-setting criterion: true when
// cos^2(2*theta) >= (2*alpha - 1) / ((2 - alpha) * alpha^3), i.e. Bob cannot
// steer Alice and at most the Alice -> Bob direction remains. Evaluated in
// cleared-denominator form so alpha = 0 needs no special case.
inline bool infinite_setting_a_to_b_only(double alpha, double theta) {
  const double c2 = std::cos(2.0 * theta);
  return c2 * c2 * (2.0 - alpha) * alpha * alpha * alpha >= 2.0 * alpha - 1.0;
}

// Geometric Bell-like steering test: the inequality
//   max_{m,n} sum_ij T_ij m_i n_j  >=  2 * (sum_ij T_ij^2) / 3
// holds for unsteerable states; lhs < rhs certifies steerability. The lhs
// maximum over unit vectors equals the largest singular value of T.
struct BellGeomResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

inline BellGeomResult bell_geom(const DensityMatrix& rho) {
  const CorrelationMatrix t = correlation_matrix(rho);
  BellGeomResult r;
  r.lhs = max_singular_value_3x3(t.as_matrix());
  r.rhs = 2.0 * t.sum_of_squares() / 3.0;
  r.violated = r.lhs < r.rhs - kWitnessTol;
  return r;
}

// Region of the (alpha, theta) plane for the target family. At the default
// mu = 1/sqrt(3) the analytic thresholds apply; boundary equalities classify
// with the lower region. For any other mu the thresholds above no longer
// hold and the concurrences decide directly. theta = 0 states are classical
// in this family, so neither direction is ever witnessed there.
inline Region classify_region(double alpha, double theta, double mu1 = kInvSqrt3,
                              double mu2 = kInvSqrt3) {
  require_alpha_range(alpha);
  require_theta_range(theta);
  require_mu_range(mu1, "mu1");
  require_mu_range(mu2, "mu2");
  if (theta == 0.0) return Region::NeitherWitnessed;
  if (mu1 != kInvSqrt3 || mu2 != kInvSqrt3)
    return witness_steering(target_state(alpha, theta), mu1, mu2).region;
  if (alpha <= boundary_alice_to_bob()) return Region::NeitherWitnessed;
  if (alpha <= boundary_bob_to_alice(theta)) return Region::OneWayAToB;
  return Region::BothWay;
}

}  // namespace qsteer
