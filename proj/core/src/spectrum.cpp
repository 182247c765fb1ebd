#include "degpar/spectrum.hpp"

#include "degpar/errors.hpp"
#include "degpar/special.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>

namespace degpar {

namespace {

// Below this x the second derivative is taken from the ODE itself.
constexpr double kOdeIdentityCutoff = 1e-2;

void require_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " evaluated outside [0, 1]: " + std::to_string(x));
    }
}

/// RK4 integrator for X'' = -mu x^e X on [0, 1] with the weights x^e
/// precomputed at every half step.
class Shooter {
public:
    Shooter(double exponent, BoundaryKind bc)
        : bc_(bc), steps_(static_cast<int>(std::lround(1.0 / kShootingStep))) {
        const double h = 1.0 / steps_;
        weight_.resize(2 * static_cast<std::size_t>(steps_) + 1);
        for (std::size_t i = 0; i < weight_.size(); ++i) {
            weight_[i] = std::pow(0.5 * h * static_cast<double>(i), exponent);
        }
    }

    /// Integrates from x = 0 and returns (X(1), X'(1)).
    std::pair<double, double> integrate(double mu, ShootingProfile* out = nullptr) const {
        const double h = 1.0 / steps_;
        double x = bc_.left == EdgeCondition::Dirichlet ? 0.0 : 1.0;
        double p = bc_.left == EdgeCondition::Dirichlet ? 1.0 : 0.0;
        if (out != nullptr) {
            out->step = h;
            out->value.assign(static_cast<std::size_t>(steps_) + 1, 0.0);
            out->slope.assign(static_cast<std::size_t>(steps_) + 1, 0.0);
            out->value[0] = x;
            out->slope[0] = p;
        }
        for (int i = 0; i < steps_; ++i) {
            const double w0 = weight_[2 * static_cast<std::size_t>(i)];
            const double wh = weight_[2 * static_cast<std::size_t>(i) + 1];
            const double w1 = weight_[2 * static_cast<std::size_t>(i) + 2];
            const double k1x = p;
            const double k1p = -mu * w0 * x;
            const double k2x = p + 0.5 * h * k1p;
            const double k2p = -mu * wh * (x + 0.5 * h * k1x);
            const double k3x = p + 0.5 * h * k2p;
            const double k3p = -mu * wh * (x + 0.5 * h * k2x);
            const double k4x = p + h * k3p;
            const double k4p = -mu * w1 * (x + h * k3x);
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            if (out != nullptr) {
                out->value[static_cast<std::size_t>(i) + 1] = x;
                out->slope[static_cast<std::size_t>(i) + 1] = p;
            }
        }
        return {x, p};
    }

    double functional(double mu) const {
        const auto [x, p] = integrate(mu);
        return bc_.right == EdgeCondition::Dirichlet ? x : p;
    }

private:
    BoundaryKind bc_;
    int steps_;
    std::vector<double> weight_;
};

std::string lower(std::string s) {
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::vector<SpatialEigenpair> spatial_eigenvalues(double exponent, int count) {
    if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
        throw ValidationError("degeneracy exponent must be >= 0");
    }
    const BesselOrder order(1.0 / (exponent + 2.0));
    const RootTable table = bessel_roots(order, count);
    const double q = 0.5 * (exponent + 2.0);
    std::vector<SpatialEigenpair> pairs;
    pairs.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double root = table[i];
        pairs.push_back({exponent, static_cast<int>(i) + 1, (q * root) * (q * root), root, 1.0});
    }
    return pairs;
}

SpatialEigenfunction::SpatialEigenfunction(const SpatialEigenpair& pair)
    : pair_(pair),
      order_(1.0 / (pair.exponent + 2.0)),
      power_(0.5 * (pair.exponent + 2.0)),
      scale_(pair.amplitude * std::pow(2.0 / (pair.exponent + 2.0), order_) *
             std::pow(pair.mu, 0.5 * order_)),
      slope_at_zero_(scale_ * pair.root * power_ * std::pow(0.5 * pair.root, order_ - 1.0) /
                     std::tgamma(order_)) {
    if (!(pair.mu > 0.0) || !(pair.root > 0.0)) {
        throw ValidationError("spatial eigenpair needs positive mu and root");
    }
}

Jet SpatialEigenfunction::operator()(double x) const {
    require_unit_interval(x, "spatial eigenfunction");
    if (x == 0.0) return {0.0, slope_at_zero_, 0.0};

    const double r = pair_.root;
    const double q = power_;
    const double nu = order_;
    const double xq = std::pow(x, q);
    const double z = r * xq;
    const double j = detail::cyl_j(nu, z);
    const double jm = detail::cyl_j(nu - 1.0, z);
    const double sx = std::sqrt(x);

    Jet out;
    out.value = scale_ * sx * j;
    out.d1 = scale_ * r * q * (xq / sx) * jm;
    if (x < kOdeIdentityCutoff) {
        out.d2 = -pair_.mu * std::pow(x, pair_.exponent) * out.value;
    } else {
        const double jp = jm - (nu / z) * j;
        const double jpp = -jp / z - (1.0 - (nu * nu) / (z * z)) * j;
        const double dz = r * q * xq / x;
        const double ddz = r * q * (q - 1.0) * xq / (x * x);
        out.d2 = scale_ * (-0.25 * j / (x * sx) + jp * dz / sx + sx * (jpp * dz * dz + jp * ddz));
    }
    return out;
}

std::string to_string(BoundaryKind bc) {
    auto tag = [](EdgeCondition c) { return c == EdgeCondition::Dirichlet ? 'D' : 'N'; };
    return std::string{tag(bc.left), tag(bc.right)};
}

BoundaryKind parse_boundary_kind(const std::string& text) {
    const std::string s = lower(text);
    std::vector<std::string> tokens;
    std::string current;
    for (char c : s) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    if (tokens.size() == 1 && tokens[0].size() == 2) {
        tokens = {tokens[0].substr(0, 1), tokens[0].substr(1, 1)};
    }
    auto edge = [&](const std::string& t) {
        if (t == "d" || t == "dirichlet") return EdgeCondition::Dirichlet;
        if (t == "n" || t == "neumann") return EdgeCondition::Neumann;
        throw ValidationError("unknown boundary condition '" + t + "' in '" + text + "'");
    };
    if (tokens.size() != 2) {
        throw ValidationError("boundary kind needs two conditions (e.g. D,N), got '" + text + "'");
    }
    return {edge(tokens[0]), edge(tokens[1])};
}

std::vector<ShootingEigenpair> shooting_eigenvalues(double exponent, BoundaryKind bc, int count) {
    if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
        throw ValidationError("degeneracy exponent must be >= 0");
    }
    if (count < 1) {
        throw ValidationError("shooting_eigenvalues requires count >= 1");
    }
    const Shooter shooter(exponent, bc);
    const double q = 0.5 * (exponent + 2.0);
    const double sigma_step = q * std::numbers::pi / 16.0;
    const double sigma_max = q * (count + 2) * std::numbers::pi;

    std::vector<double> mus;
    if (shooter.functional(0.0) == 0.0) mus.push_back(0.0);

    double a = sigma_step / 64.0;
    double fa = shooter.functional(a * a);
    while (static_cast<int>(mus.size()) < count && a < sigma_max) {
        const double b = a + sigma_step;
        const double fb = shooter.functional(b * b);
        if (fb == 0.0) {
            mus.push_back(b * b);
        } else if (fa * fb < 0.0) {
            double lo = a;
            double hi = b;
            double flo = fa;
            for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = shooter.functional(mid * mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fmid < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            const double sigma = 0.5 * (lo + hi);
            mus.push_back(sigma * sigma);
        }
        a = b;
        fa = fb;
    }
    if (static_cast<int>(mus.size()) < count) {
        throw NumericalFailure("shooting found only " + std::to_string(mus.size()) + " of " +
                               std::to_string(count) + " eigenvalues for bc " + to_string(bc));
    }

    std::vector<ShootingEigenpair> pairs;
    pairs.reserve(mus.size());
    for (std::size_t i = 0; i < mus.size(); ++i) {
        auto profile = std::make_shared<ShootingProfile>();
        const auto [x1, p1] = shooter.integrate(mus[i], profile.get());
        double peak = 0.0;
        for (double v : profile->value) peak = std::max(peak, std::fabs(v));
        const double sign = (profile->value.size() > 1 && profile->value[1] < 0.0) ? -1.0 : 1.0;
        const double scale = sign / peak;
        for (double& v : profile->value) v *= scale;
        for (double& v : profile->slope) v *= scale;
        const double endpoint = bc.right == EdgeCondition::Dirichlet ? x1 : p1;

        ShootingEigenpair pair;
        pair.exponent = exponent;
        pair.bc = bc;
        pair.index = static_cast<int>(i) + 1;
        pair.mu = mus[i];
        pair.endpoint_residual = std::fabs(endpoint) / peak;
        pair.profile = std::move(profile);
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

ShootingEigenfunction::ShootingEigenfunction(ShootingEigenpair pair) : pair_(std::move(pair)) {
    if (!pair_.profile || pair_.profile->value.size() < 2) {
        throw ValidationError("shooting eigenfunction needs a tabulated profile");
    }
}

Jet ShootingEigenfunction::operator()(double x) const {
    require_unit_interval(x, "shooting eigenfunction");
    const ShootingProfile& prof = *pair_.profile;
    const double h = prof.step;
    const std::size_t last = prof.value.size() - 1;
    const auto i = std::min(static_cast<std::size_t>(x / h), last - 1);
    const double x0 = h * static_cast<double>(i);
    const double x1 = h * static_cast<double>(i + 1);
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;

    const double mu = pair_.mu;
    const double e = pair_.exponent;
    const double curv0 = -mu * std::pow(x0, e) * prof.value[i];
    const double curv1 = -mu * std::pow(x1, e) * prof.value[i + 1];

    Jet out;
    out.value = h00 * prof.value[i] + h10 * h * prof.slope[i] + h01 * prof.value[i + 1] +
                h11 * h * prof.slope[i + 1];
    out.d1 = h00 * prof.slope[i] + h10 * h * curv0 + h01 * prof.slope[i + 1] + h11 * h * curv1;
    out.d2 = -mu * std::pow(x, e) * out.value;
    return out;
}

}  // namespace degpar
