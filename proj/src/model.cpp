#include "sharpwave/model.hpp"

#include <sstream>
#include <stdexcept>

namespace sharpwave {

Setting::Setting(int dim, double b) : d(dim), beta(b) {
  if (d < 2) throw DomainError("Setting: dimension must be >= 2");
  if (!std::isfinite(beta)) throw DomainError("Setting: beta must be finite");
}

ExtremiserParams::ExtremiserParams(Complex a_, CVec b_, Complex c_, Complex lambda_)
    : a(a_), b(std::move(b_)), c(c_), lambda(lambda_) {
  if (b.size() < 2) throw DomainError("ExtremiserParams: b must live in C^d with d >= 2");
  if (!(a.real() < 0.0)) throw DomainError("ExtremiserParams: need Re a < 0");
  if (!(b.real().norm() < -a.real())) throw DomainError("ExtremiserParams: need |Re b| < -Re a");
}

Complex extremiser_eval(const ExtremiserParams& p, const Vec& xi) {
  const double r = xi.norm();
  if (!(r > 0.0)) throw DomainError("extremiser_eval: xi = 0 is the 1/|xi| singularity");
  const Complex bx = p.b.dot(xi.cast<Complex>());  // Eigen conjugates the left operand
  const Complex expo = p.a * r + std::conj(bx) + p.c;
  return p.lambda * std::exp(expo) / r;
}

// ---------------------------------------------------------------------------

FourierData FourierData::radial(int d, Profile phi, double sing_order, double decay_rate,
                                std::string label) {
  if (d < 2) throw DomainError("FourierData: dimension must be >= 2");
  if (!(decay_rate > 0.0)) throw DomainError("FourierData: decay rate must be positive");
  FourierData out;
  out.kind_ = Kind::Radial;
  out.dim_ = d;
  out.label_ = std::move(label);
  out.sing_ = sing_order;
  out.decay_ = decay_rate;
  out.phi_ = std::move(phi);
  return out;
}

FourierData FourierData::radial_checked(const Setting& s, Profile phi, double sing_order,
                                        double decay_rate, std::string label) {
  FourierData out = radial(s.d, std::move(phi), sing_order, decay_rate, std::move(label));
  const double m = 0.5 * (3 * s.d - 3) + 2.0 * s.beta;
  if (!(m - 2.0 * sing_order > -1.0))
    throw DomainError("FourierData: weighted norm diverges at r = 0 for this setting");
  const double v = integrate_semiline(
      [&](double r) { return std::norm(out.phi_(r)) * std::pow(r, m); },
      2.0 * sing_order - m, 2.0 * decay_rate);
  if (!std::isfinite(v)) throw AccuracyError("FourierData: weighted norm is not finite");
  return out;
}

FourierData FourierData::extremiser(ExtremiserParams p, std::string label) {
  FourierData out;
  out.kind_ = Kind::Extremiser;
  out.dim_ = p.dim();
  out.label_ = std::move(label);
  out.sing_ = 1.0;
  out.decay_ = p.min_decay();
  const Vec rb = p.b.real();
  if (rb.norm() > 0.0) out.axis_ = rb.normalized();
  out.params_ = std::move(p);
  return out;
}

FourierData FourierData::generic(int d, Field f, double sing_order, double decay_rate,
                                 std::optional<Vec> axis, std::string label) {
  if (d < 2) throw DomainError("FourierData: dimension must be >= 2");
  if (!(decay_rate > 0.0)) throw DomainError("FourierData: decay rate must be positive");
  if (axis && axis->size() != d) throw DomainError("FourierData: axis dimension mismatch");
  FourierData out;
  out.kind_ = Kind::Generic;
  out.dim_ = d;
  out.label_ = std::move(label);
  out.sing_ = sing_order;
  out.decay_ = decay_rate;
  out.field_ = std::move(f);
  if (axis) out.axis_ = axis->normalized();
  return out;
}

bool FourierData::is_radial() const {
  switch (kind_) {
    case Kind::Radial:
      return true;
    case Kind::Extremiser:
      return params_->b.norm() == 0.0;
    case Kind::Generic:
      return false;
  }
  return false;
}

std::optional<Vec> FourierData::zonal_axis() const {
  if (axis_) return axis_;
  // |f^| radial: any axis works.
  if (kind_ == Kind::Radial || kind_ == Kind::Extremiser) return Vec::Unit(dim_, 0);
  return std::nullopt;
}

const ExtremiserParams& FourierData::params() const {
  if (!params_) throw UnsupportedData("FourierData: '" + label_ + "' is not an extremiser");
  return *params_;
}

Complex FourierData::profile(double r) const {
  if (kind_ == Kind::Radial) return phi_(r);
  if (kind_ == Kind::Extremiser && is_radial()) {
    const auto& p = *params_;
    return p.lambda * std::exp(p.a * r + p.c) / r;
  }
  throw UnsupportedData("FourierData: '" + label_ + "' has no radial profile");
}

Complex FourierData::operator()(const Vec& xi) const {
  switch (kind_) {
    case Kind::Radial:
      return phi_(xi.norm());
    case Kind::Extremiser:
      return extremiser_eval(*params_, xi);
    case Kind::Generic:
      return field_(xi);
  }
  return {};
}

FourierData FourierData::scaled(Complex mu) const {
  FourierData out = *this;
  switch (kind_) {
    case Kind::Radial:
      out.phi_ = [phi = phi_, mu](double r) { return mu * phi(r); };
      break;
    case Kind::Extremiser:
      out.params_->lambda *= mu;
      break;
    case Kind::Generic:
      out.field_ = [f = field_, mu](const Vec& x) { return mu * f(x); };
      break;
  }
  return out;
}

FourierData FourierData::dilated(double mu) const {
  if (!(mu > 0.0)) throw DomainError("FourierData::dilated: mu must be positive");
  FourierData out = *this;
  out.decay_ = decay_ / mu;
  switch (kind_) {
    case Kind::Radial:
      out.phi_ = [phi = phi_, mu](double r) { return phi(r / mu); };
      break;
    case Kind::Extremiser: {
      // e^{a|x|/mu + b.x/mu + c} / (|x|/mu)
      auto& p = *out.params_;
      p.a /= mu;
      p.b /= mu;
      p.lambda *= mu;
      break;
    }
    case Kind::Generic:
      out.field_ = [f = field_, mu](const Vec& x) { return f(x / mu); };
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Unit vector at polar cosine t about axis e, rotated towards a fixed
// orthogonal direction.
Vec ray_direction(const Vec& e, double t) {
  const int d = static_cast<int>(e.size());
  Vec perp = Vec::Unit(d, 0);
  if (std::abs(e[0]) > 0.9) perp = Vec::Unit(d, 1);
  perp -= perp.dot(e) * e;
  perp.normalize();
  return t * e + std::sqrt(std::max(0.0, 1.0 - t * t)) * perp;
}

}  // namespace

double sobolev_norm_sq(const FourierData& data, double s, const Setting& setting, int n_angle) {
  const int d = setting.d;
  if (data.dim() != d) throw DomainError("sobolev_norm_sq: data dimension differs from setting");
  const double m = 2.0 * s + d - 1.0;
  const double sing = 2.0 * data.sing_order() - m;
  if (!(sing < 1.0)) {
    std::ostringstream os;
    os << "sobolev_norm_sq: integral diverges at r = 0 (radial exponent " << m << " with |f^|^2 ~ r^"
       << -2.0 * data.sing_order() << ")";
    throw AccuracyError(os.str());
  }
  const double norm_const = std::pow(2.0 * kPi, -d);
  const double decay = 2.0 * data.decay_rate();
  if (data.is_radial()) {
    const double radial = integrate_semiline(
        [&](double r) { return std::norm(data.profile(r)) * std::pow(r, m); }, sing, decay);
    return norm_const * sphere_area(d) * radial;
  }
  const auto axis = data.zonal_axis();
  if (!axis) throw UnsupportedData("sobolev_norm_sq: data has no axis of symmetry");
  const double ang = sphere_integrate_zonal(
      d,
      [&](double t) {
        const Vec w = ray_direction(*axis, t);
        return integrate_semiline(
            [&](double r) { return std::norm(data(Vec(r * w))) * std::pow(r, m); }, sing, decay);
      },
      n_angle);
  return norm_const * ang;
}

std::pair<FourierData, FourierData> wave_split(const FourierData& u0, const FourierData& u1) {
  if (u0.dim() != u1.dim()) throw DomainError("wave_split: dimension mismatch");
  const int d = u0.dim();
  const Complex I(0.0, 1.0);
  const double sing = std::max(u0.sing_order(), u1.sing_order() + 1.0);
  const double decay = std::min(u0.decay_rate(), u1.decay_rate());
  if (u0.is_radial() && u1.is_radial()) {
    auto make = [&](double sign, const char* name) {
      return FourierData::radial(
          d, [u0, u1, sign, I](double r) { return 0.5 * (u0.profile(r) - sign * I * u1.profile(r) / r); },
          sing, decay, name);
    };
    return {make(1.0, "split+"), make(-1.0, "split-")};
  }
  std::optional<Vec> axis;
  const auto a0 = u0.zonal_axis(), a1 = u1.zonal_axis();
  if (u0.is_radial() && a1) axis = a1;
  else if (u1.is_radial() && a0) axis = a0;
  else if (a0 && a1 && (*a0 - *a1).norm() < 1e-14) axis = a0;
  auto make = [&](double sign, const char* name) {
    return FourierData::generic(
        d, [u0, u1, sign, I](const Vec& xi) { return 0.5 * (u0(xi) - sign * I * u1(xi) / xi.norm()); },
        sing, decay, axis, name);
  };
  return {make(1.0, "split+"), make(-1.0, "split-")};
}

// ---------------------------------------------------------------------------

FourierData foschi_data(int d) {
  return FourierData::extremiser(ExtremiserParams(-1.0, CVec::Zero(d), 0.0), "foschi");
}

FourierData gaussian_data(int d) {
  return FourierData::radial(d, [](double r) { return Complex(std::exp(-r * r)); }, 0.0, 1.0, "gaussian");
}

FourierData tilted_gaussian_data(int d) {
  return FourierData::generic(
      d,
      [](const Vec& xi) {
        const double r = xi.norm();
        return Complex(std::exp(-r * r) * (1.0 + 0.5 * xi[0] / r));
      },
      0.0, 1.0, Vec::Unit(d, 0), "tilted_gaussian");
}

FourierData extremiser_data(int d, double a, double b1, double c) {
  CVec b = CVec::Zero(d);
  b[0] = b1;
  std::ostringstream os;
  os << "extremiser(" << a << "," << b1 << "," << c << ")";
  return FourierData::extremiser(ExtremiserParams(a, b, c), os.str());
}

FourierData prop13_data(int d, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("prop13_data: delta must lie in (0, 1)");
  CVec b = CVec::Zero(d);
  b[0] = 1.0 - delta;
  std::ostringstream os;
  os << "prop13(" << delta << ")";
  return FourierData::extremiser(ExtremiserParams(-1.0, b, 0.0), os.str());
}

namespace {

std::vector<double> parse_args(const std::string& spec, const std::string& name) {
  const auto open = spec.find('('), close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || spec.substr(0, open) != name)
    throw std::invalid_argument("preset '" + spec + "' is malformed");
  std::vector<double> out;
  std::stringstream ss(spec.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

FourierData preset_data(const std::string& spec, int d) {
  if (spec == "foschi") return foschi_data(d);
  if (spec == "gaussian") return gaussian_data(d);
  if (spec == "tilted_gaussian") return tilted_gaussian_data(d);
  if (spec.rfind("extremiser", 0) == 0) {
    const auto v = parse_args(spec, "extremiser");
    if (v.size() != 3) throw std::invalid_argument("extremiser(a,b1,c) takes three numbers");
    return extremiser_data(d, v[0], v[1], v[2]);
  }
  if (spec.rfind("prop13", 0) == 0) {
    const auto v = parse_args(spec, "prop13");
    if (v.size() != 1) throw std::invalid_argument("prop13(delta) takes one number");
    return prop13_data(d, v[0]);
  }
  throw std::invalid_argument("unknown data preset '" + spec + "'");
}

}  // namespace sharpwave
