#include "rlscat/potential.hpp"
#include "rlscat/dirac.hpp"
#include "rlscat/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace rls;

namespace {

PotentialSpec yukawa_spec(double g, double range) {
  PotentialSpec s;
  s.family = PotentialFamily::yukawa;
  s.strength = g;
  s.range = range;
  return s;
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("radial profiles") {
  const PotentialSpec yk = yukawa_spec(2.0, 0.5);
  CHECK(radial_profile(yk, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));

  PotentialSpec gs;
  gs.family = PotentialFamily::gaussian;
  gs.strength = -1.5;
  gs.range = 2.0;
  CHECK(radial_profile(gs, 2.0) == doctest::Approx(-1.5 * std::exp(-1.0)).epsilon(1e-15));

  PotentialSpec cc;
  cc.family = PotentialFamily::cutoff_coulomb;
  cc.strength = 1.0;
  cc.range = 4.0;
  cc.r_cut = 0.1;
  CHECK(radial_profile(cc, 0.01) == doctest::Approx(std::exp(-0.0025) / 0.1).epsilon(1e-12));
  CHECK(radial_profile(cc, 1.0) == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
}

TEST_CASE("electrostatic potential matrix") {
  const PotentialSpec yk = yukawa_spec(1.3, 0.7);
  const Vec3 r(0.4, -0.2, 0.9);
  const Matrix4 v = potential_matrix(yk, r);
  const double nu = radial_profile(yk, r.norm());
  CHECK((v + yk.charge * nu * Matrix4::Identity()).norm() <= 1e-14 * std::abs(nu));
  CHECK((v - v.adjoint()).norm() <= 1e-14 * v.norm());
  CHECK(yk.is_radial());
}

TEST_CASE("magnetic term enters through velocity matrices") {
  PotentialSpec s = yukawa_spec(0.8, 1.0);
  s.vector_amplitude = Vec3(0.0, 0.0, 1.0);
  const Vec3 r(0.3, 0.0, 0.4);
  const double nu = radial_profile(s, r.norm());
  const Matrix4 v = potential_matrix(s, r);
  const Matrix4 expect = -s.charge * nu * Matrix4::Identity() +
                         s.charge * nu * alpha_dot(Vec3(0.0, 0.0, 1.0));
  CHECK((v - expect).norm() <= 1e-13 * expect.norm());
  CHECK_FALSE(s.is_radial());
}

TEST_CASE("matrix-table family applies the user matrix field") {
  PotentialSpec s;
  s.family = PotentialFamily::matrix_table;
  s.matrix_field = [](const Vec3& r) {
    return Matrix4(std::exp(-r.norm()) * alpha(1));
  };
  const Vec3 r(1.0, 0.0, 0.0);
  const Matrix4 v = potential_matrix(s, r);
  CHECK((v - std::exp(-1.0) * alpha(1)).norm() <= 1e-15);

  PotentialSpec missing;
  missing.family = PotentialFamily::matrix_table;
  CHECK_THROWS_AS(potential_matrix(missing, r), std::invalid_argument);
}

TEST_CASE("factorization recovers the potential and satisfies the sign identities") {
  PotentialSpec s;
  s.family = PotentialFamily::matrix_table;
  s.matrix_field = [](const Vec3& r) {
    const double f = std::exp(-r.squaredNorm());
    Matrix4 v = -1.2 * f * Matrix4::Identity() + 0.5 * f * alpha(3) + 0.3 * f * beta();
    return v;
  };
  const Vec3 r(0.2, 0.5, -0.3);
  const Matrix4 v = potential_matrix(s, r);
  const Factorization f = factorize(v);

  CHECK((f.v1 * f.w1 * f.v1 - v).norm() <= 1e-12 * (1.0 + v.norm()));
  CHECK((f.w1 * f.w1 - Matrix4::Identity()).norm() <= 1e-12);
  CHECK((f.v1 - f.v1.adjoint()).norm() <= 1e-12);
  CHECK((f.w1 - f.w1.adjoint()).norm() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix4> es(f.v1);
  CHECK(es.eigenvalues().minCoeff() >= -1e-13);
}

TEST_CASE("sign matrix acts as identity on the kernel directions") {
  PotentialSpec s;
  s.family = PotentialFamily::matrix_table;
  s.matrix_field = [](const Vec3&) {
    Matrix4 v = Matrix4::Zero();
    v(0, 0) = -2.0;
    v(1, 1) = 3.0;
    return v;
  };
  const Factorization f = factorize(potential_matrix(s, Vec3(1, 0, 0)));
  const Spinor4 e2 = Spinor4::Unit(2);
  const Spinor4 e3 = Spinor4::Unit(3);
  CHECK((f.w1 * e2 - e2).norm() <= 1e-14);
  CHECK((f.w1 * e3 - e3).norm() <= 1e-14);
  CHECK(f.w1(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(f.w1(1, 1).real() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("non-hermitian input is rejected") {
  Matrix4 v = Matrix4::Zero();
  v(0, 1) = 1.0;
  CHECK_THROWS_AS(factorize(v), std::invalid_argument);
}

TEST_CASE("grid factorization matches pointwise factorization") {
  const PotentialSpec s = yukawa_spec(1.0, 1.0);
  const VolumeGrid g = build_volume_grid(6.0, 8, 5);
  const FactorizedPotential fp = factorize_on_grid(s, g);
  REQUIRE(fp.v1.size() == static_cast<std::size_t>(g.size()));
  const Eigen::Index mid = g.size() / 2;
  const Factorization f = factorize(potential_matrix(s, g.nodes.col(mid)));
  CHECK((fp.v1[mid] - f.v1).norm() <= 1e-13);
  CHECK((fp.w1[mid] - f.w1).norm() <= 1e-13);
  CHECK((fp.v1w1[mid] - f.v1 * f.w1).norm() <= 1e-13);
  CHECK(fp.max_norm > 0.0);
}

TEST_CASE("decay check accepts short range and rejects coulomb tails") {
  const DecayReport good = decay_check(yukawa_spec(1.0, 1.0));
  CHECK(good.v1_ok);
  CHECK(good.v_ok);

  PotentialSpec coulomb;
  coulomb.family = PotentialFamily::matrix_table;
  coulomb.matrix_field = [](const Vec3& r) {
    return Matrix4(-1.0 / r.norm() * Matrix4::Identity());
  };
  const DecayReport bad = decay_check(coulomb);
  CHECK_FALSE(bad.v_ok);
}

TEST_CASE("rollnik estimate is finite and scales quadratically in the coupling") {
  const VolumeGrid g = build_volume_grid(8.0, 16, 5);
  const double e1 = rollnik_estimate(yukawa_spec(1.0, 0.8), g);
  const double e2 = rollnik_estimate(yukawa_spec(2.0, 0.8), g);
  CHECK(std::isfinite(e1));
  CHECK(e1 > 0.0);
  CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("family names round-trip") {
  CHECK(family_from_name("yukawa") == PotentialFamily::yukawa);
  CHECK(family_from_name("gaussian") == PotentialFamily::gaussian);
  CHECK(family_from_name("cutoff-coulomb") == PotentialFamily::cutoff_coulomb);
  CHECK(family_from_name("matrix-table") == PotentialFamily::matrix_table);
  CHECK(family_name(PotentialFamily::yukawa) == "yukawa");
  CHECK(family_name(PotentialFamily::cutoff_coulomb) == "cutoff-coulomb");
  CHECK_THROWS_AS(family_from_name("square-well"), std::invalid_argument);
}

}  // TEST_SUITE
