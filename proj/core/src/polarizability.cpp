#include "qlat/polarizability.hpp"

#include <cmath>

#include "qlat/errors.hpp"

namespace qlat {

namespace {

const cplx kI(0.0, 1.0);

// Levi-Civita symbol on {0,1,2}.
int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

struct BeamComponents {
  Vec3 k;
  double phase;
  CVec3 pol;                 // Cartesian, in the frame (u1, u2, axis)
  std::array<cplx, 3> sph;   // [q + 1] = e_q^* . pol
};

std::vector<BeamComponents> beam_components(const LatticeGeometry& g) {
  const AxisFrame f = AxisFrame::about(g.quantization_axis);
  std::vector<BeamComponents> out;
  for (const auto& b : g.beams) {
    BeamComponents c;
    c.k = b.wavevector;
    c.phase = b.phase;
    c.pol = CVec3(f.u1.cast<cplx>().dot(b.polarization), f.u2.cast<cplx>().dot(b.polarization),
                  f.axis.cast<cplx>().dot(b.polarization));
    for (int q = -1; q <= 1; ++q) c.sph[q + 1] = spherical_basis(q, g.quantization_axis).dot(b.polarization);
    out.push_back(c);
  }
  return out;
}

// Unit spherical vectors expressed in their own frame (u1, u2, axis).
CVec3 local_spherical(int q) { return spherical_basis(q, Vec3::UnitZ()); }

}  // namespace

void DetuningSpec::validate() const {
  if (!std::isfinite(delta_stretch) || delta_stretch == 0.0) throw InputError("detuning must be finite and non-zero");
}

SphericalAlpha alpha_tensor(const AtomSpec& atom, HalfInt F, const DetuningSpec& det) {
  atom.validate();
  det.validate();
  if (!atom.is_ground_level(F)) throw InputError("F = " + F.str() + " is not a ground hyperfine level");
  const int d = F.twice() + 1;
  SphericalAlpha alpha;
  for (auto& row : alpha)
    for (auto& m : row) m = CMat::Zero(d, d);

  const HalfInt one(1);
  for (HalfInt Fp : atom.excited_levels()) {
    const double f = oscillator_strength(atom, F, Fp);
    if (f == 0.0) continue;
    double ratio = 1.0;
    if (det.mode == DetuningMode::finite_hyperfine) {
      const double delta = atom.detuning(F, Fp, det.delta_stretch);
      if (std::abs(delta) < 1e-12) throw PoleError("detuning coincides with the F' = " + Fp.str() + " resonance");
      ratio = det.delta_stretch / delta;
    }
    for (int q = -1; q <= 1; ++q) {
      for (int qp = -1; qp <= 1; ++qp) {
        for (HalfInt m : projections(F)) {
          const HalfInt mp = m + HalfInt(q);
          if (std::abs(mp.twice()) > Fp.twice()) continue;
          const HalfInt m2 = mp - HalfInt(qp);
          if (std::abs(m2.twice()) > F.twice()) continue;
          const double c1 = clebsch_gordan(F, m, one, HalfInt(q), Fp, mp);
          const double c2 = clebsch_gordan(F, m2, one, HalfInt(qp), Fp, mp);
          alpha[qp + 1][q + 1](m_index(F, m2), m_index(F, m)) += ratio * f * c1 * c2;
        }
      }
    }
  }
  return alpha;
}

CartesianAlpha to_cartesian(const SphericalAlpha& alpha) {
  const int d = static_cast<int>(alpha[0][0].rows());
  CartesianAlpha out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out[i][j] = CMat::Zero(d, d);
      for (int qp = -1; qp <= 1; ++qp)
        for (int q = -1; q <= 1; ++q)
          out[i][j] += local_spherical(qp)(i) * std::conj(local_spherical(q)(j)) * alpha[qp + 1][q + 1];
    }
  return out;
}

CartesianAlpha stretched_limit_alpha(HalfInt F) {
  const SpinMatrices s = SpinMatrices::of(F);
  const std::array<const CMat*, 3> fk{&s.fx, &s.fy, &s.fz};
  CartesianAlpha out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out[i][j] = (i == j ? 2.0 / 3.0 : 0.0) * s.identity;
      for (int k = 0; k < 3; ++k) {
        const int e = levi_civita(i, j, k);
        if (e != 0) out[i][j] += (-kI / 3.0) * double(e) * (*fk[k]) / F.value();
      }
    }
  return out;
}

CartesianAlpha rank2_part(const CartesianAlpha& alpha) {
  const int d = static_cast<int>(alpha[0][0].rows());
  CMat trace = CMat::Zero(d, d);
  for (int i = 0; i < 3; ++i) trace += alpha[i][i];
  CartesianAlpha out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out[i][j] = 0.5 * (alpha[i][j] + alpha[j][i]);
      if (i == j) out[i][j] -= trace / 3.0;
    }
  return out;
}

CMat zeeman_term(HalfInt F, const Vec3& b, const Vec3& axis) {
  const AxisFrame f = AxisFrame::about(axis);
  const SpinMatrices s = SpinMatrices::of(F);
  return -(b.dot(f.u1) * s.fx + b.dot(f.u2) * s.fy + b.dot(f.axis) * s.fz);
}

OperatorField potential_operator(const LatticeGeometry& geometry, const AtomSpec& atom, HalfInt F, double u1,
                                 const DetuningSpec& det) {
  geometry.validate();
  det.validate();
  if (!(u1 > 0.0)) throw InputError("u1 must be positive");
  if (!atom.is_ground_level(F)) throw InputError("F = " + F.str() + " is not a ground hyperfine level");
  const int d = F.twice() + 1;
  const auto beams = beam_components(geometry);
  std::vector<Harmonic> terms;

  if (det.mode == DetuningMode::infinite_limit) {
    if (F != atom.stretched_ground())
      throw InputError("infinite-detuning potential requires the stretched level F = " + atom.stretched_ground().str());
    const SpinMatrices s = SpinMatrices::of(F);
    for (const auto& bp : beams)
      for (const auto& b : beams) {
        const cplx w = std::polar(1.0, b.phase - bp.phase);
        const cplx scalar = -(2.0 / 3.0) * u1 * bp.pol.dot(b.pol) * w;
        const CVec3 beff = (kI / 3.0) * u1 * cross(CVec3(bp.pol.conjugate()), b.pol) * w;
        CMat c = scalar * s.identity + (beff(0) * s.fx + beff(1) * s.fy + beff(2) * s.fz) / F.value();
        terms.push_back(Harmonic{b.k - bp.k, c});
      }
  } else {
    const SphericalAlpha alpha = alpha_tensor(atom, F, det);
    for (const auto& bp : beams)
      for (const auto& b : beams) {
        const cplx w = std::polar(1.0, b.phase - bp.phase);
        CMat c = CMat::Zero(d, d);
        for (int qp = -1; qp <= 1; ++qp)
          for (int q = -1; q <= 1; ++q) {
            const cplx amp = std::conj(bp.sph[qp + 1]) * b.sph[q + 1];
            if (amp != cplx(0.0)) c += amp * alpha[qp + 1][q + 1];
          }
        terms.push_back(Harmonic{b.k - bp.k, -u1 * w * c});
      }
  }
  if (geometry.external_b.norm() > 0.0)
    terms.push_back(Harmonic{Vec3::Zero(), zeeman_term(F, geometry.external_b, geometry.quantization_axis)});
  return OperatorField(d, terms);
}

AppendixBReport appendix_b_identities() {
  const HalfInt j = half(1), jp = half(3);
  // D_q: rows m' of J', columns m of J.
  std::array<CMat, 3> dq;
  for (int q = -1; q <= 1; ++q) {
    dq[q + 1] = CMat::Zero(jp.twice() + 1, j.twice() + 1);
    for (HalfInt m : projections(j)) {
      const HalfInt mp = m + HalfInt(q);
      if (std::abs(mp.twice()) > jp.twice()) continue;
      dq[q + 1](m_index(jp, mp), m_index(j, m)) = clebsch_gordan(j, m, HalfInt(1), HalfInt(q), jp, mp);
    }
  }
  std::array<CMat, 3> di;
  for (int i = 0; i < 3; ++i) {
    di[i] = CMat::Zero(jp.twice() + 1, j.twice() + 1);
    for (int q = -1; q <= 1; ++q) di[i] += std::conj(local_spherical(q)(i)) * dq[q + 1];
  }
  CartesianAlpha alpha;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) alpha[a][b] = di[a].adjoint() * di[b];

  AppendixBReport r;
  r.trace = 0.0;
  for (int a = 0; a < 3; ++a) r.trace += alpha[a][a].trace().real();
  r.cross_z = alpha[0][1] - alpha[1][0];
  const SpinMatrices s = SpinMatrices::of(j);
  r.expected_cross_z = -(2.0 / 3.0) * kI * (2.0 * s.fz);
  r.cross_z_deviation = (r.cross_z - r.expected_cross_z).cwiseAbs().maxCoeff();
  const CartesianAlpha t2 = rank2_part(alpha);
  const CartesianAlpha closed = stretched_limit_alpha(j);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      r.rank2_norm = std::max(r.rank2_norm, t2[a][b].cwiseAbs().maxCoeff());
      r.closed_form_deviation = std::max(r.closed_form_deviation, (alpha[a][b] - closed[a][b]).cwiseAbs().maxCoeff());
    }
  return r;
}

}  // namespace qlat
