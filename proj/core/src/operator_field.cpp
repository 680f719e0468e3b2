#include "qlat/operator_field.hpp"

#include <cmath>

#include "qlat/errors.hpp"

namespace qlat {

namespace {
constexpr double kWaveTol = 1e-9;
}

SpinMatrices SpinMatrices::of(HalfInt F) {
  if (F.twice() < 0) throw InputError("spin must be non-negative");
  const int d = F.twice() + 1;
  const double f = F.value();
  SpinMatrices s;
  s.fz = CMat::Zero(d, d);
  s.fplus = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = -f + i;
    s.fz(i, i) = m;
    if (i + 1 < d) s.fplus(i + 1, i) = std::sqrt(f * (f + 1.0) - m * (m + 1.0));
  }
  s.fminus = s.fplus.adjoint();
  s.fx = 0.5 * (s.fplus + s.fminus);
  s.fy = cplx(0.0, -0.5) * (s.fplus - s.fminus);
  s.identity = CMat::Identity(d, d);
  return s;
}

int m_index(HalfInt F, HalfInt m) {
  if (std::abs(m.twice()) > F.twice() || (F.twice() - m.twice()) % 2 != 0)
    throw InputError("m = " + m.str() + " is not a projection of F = " + F.str());
  return (m.twice() + F.twice()) / 2;
}

OperatorField::OperatorField(int dim, const std::vector<Harmonic>& terms) : dim_(dim) {
  for (const auto& t : terms) {
    if (t.coeff.rows() != dim || t.coeff.cols() != dim) throw InputError("harmonic coefficient has wrong dimension");
    bool merged = false;
    for (auto& existing : terms_) {
      if ((existing.wavevector - t.wavevector).cwiseAbs().maxCoeff() < kWaveTol) {
        existing.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
}

CMat OperatorField::at(const Vec3& x) const {
  CMat out = CMat::Zero(dim_, dim_);
  for (const auto& t : terms_) out += t.coeff * std::polar(1.0, t.wavevector.dot(x));
  return out;
}

OperatorField OperatorField::operator+(const OperatorField& other) const {
  if (other.dim_ != dim_) throw InputError("cannot add operator fields of different dimension");
  std::vector<Harmonic> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return OperatorField(dim_, all);
}

OperatorField OperatorField::scaled(double factor) const {
  std::vector<Harmonic> all = terms_;
  for (auto& t : all) t.coeff *= factor;
  return OperatorField(dim_, all);
}

bool OperatorField::is_1d_lattice() const {
  for (const auto& t : terms_) {
    const Vec3& g = t.wavevector;
    if (std::abs(g.x()) > kWaveTol || std::abs(g.y()) > kWaveTol) return false;
    const double n = g.z() / 2.0;
    if (std::abs(n - std::round(n)) > kWaveTol) return false;
  }
  return true;
}

std::map<int, CMat> OperatorField::z_harmonics() const {
  if (!is_1d_lattice()) throw InputError("operator field is not a 1D lattice of period pi (units 1/k_L)");
  std::map<int, CMat> out;
  for (const auto& t : terms_) {
    const int n = static_cast<int>(std::lround(t.wavevector.z() / 2.0));
    auto [it, inserted] = out.try_emplace(n, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  return out;
}

double OperatorField::hermiticity_error(const std::vector<Vec3>& points) const {
  double worst = 0.0;
  for (const auto& x : points) {
    const CMat u = at(x);
    worst = std::max(worst, (u - u.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

OperatorField constant_field(const CMat& value) {
  return OperatorField(static_cast<int>(value.rows()), {Harmonic{Vec3::Zero(), value}});
}

}  // namespace qlat
