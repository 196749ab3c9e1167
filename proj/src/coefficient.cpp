#include "ecir/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

double sampled_bound(const std::function<double(double)>& f, double horizon,
                     const std::string& kind) {
    // Bound estimate for expression-backed coefficients: dense sampling on
    // [0, T]. Used only by the truncation diagnostic, never by the pricer.
    // Doubles as the finiteness check every coefficient must satisfy.
    const int samples = 4096;
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double s = horizon * static_cast<double>(i) / samples;
        const double v = f(s);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "coefficient '" << kind << "' is non-finite at s=" << s;
            throw EvaluationError(os.str());
        }
        m = std::max(m, std::fabs(v));
    }
    return m;
}

}  // namespace

CoefficientFunction CoefficientFunction::zero() {
    CoefficientFunction c;
    c.eval_ = [](double) { return 0.0; };
    c.bound_ = 0.0;
    c.identically_zero_ = true;
    c.kind_ = "zero";
    return c;
}

CoefficientFunction CoefficientFunction::constant(double v) {
    if (!std::isfinite(v)) throw ConfigError("constant coefficient must be finite");
    CoefficientFunction c;
    c.eval_ = [v](double) { return v; };
    c.bound_ = std::fabs(v);
    c.identically_zero_ = (v == 0.0);
    c.kind_ = "const";
    return c;
}

CoefficientFunction CoefficientFunction::parse(const std::string& spec, double horizon) {
    std::string text = spec;
    // trim
    auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
    text.erase(text.begin(), std::find_if(text.begin(), text.end(), notspace));
    text.erase(std::find_if(text.rbegin(), text.rend(), notspace).base(), text.end());

    if (text.empty()) throw ConfigError("empty coefficient spec");
    if (text == "zero") return zero();
    if (text.rfind("const:", 0) == 0) {
        std::istringstream is(text.substr(6));
        double v = 0.0;
        if (!(is >> v)) throw ConfigError("malformed constant coefficient '" + text + "'");
        return constant(v);
    }
    CoefficientFunction c;
    c.identically_zero_ = false;
    if (text == "linear_decay") {
        c.eval_ = [horizon](double s) { return horizon - s; };
        c.bound_ = horizon;
        c.kind_ = "linear_decay";
        return c;
    }
    if (text == "exp_decay") {
        c.eval_ = [](double s) { return std::exp(-s); };
        c.bound_ = 1.0;
        c.kind_ = "exp_decay";
        return c;
    }
    if (text == "sin") {
        c.eval_ = [](double s) { return std::sin(s); };
        c.bound_ = horizon >= 1.5707963267948966 ? 1.0 : std::sin(horizon);
        c.kind_ = "sin";
        return c;
    }
    // Fall through to the expression grammar. A bare number is a constant.
    Expression e = Expression::parse(text);
    {
        // Detect plain constants so k=0 style configs take the constant path.
        std::istringstream is(text);
        double v = 0.0;
        char left = 0;
        if ((is >> v) && !(is >> left)) return constant(v);
    }
    c.eval_ = [e](double s) { return e.evaluate(s); };
    c.kind_ = "expr:" + e.render();
    c.bound_ = sampled_bound(c.eval_, horizon, c.kind_);
    return c;
}

double CoefficientFunction::operator()(double s) const {
    const double v = eval_ ? eval_(s) : 0.0;
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "coefficient '" << kind_ << "' is non-finite at s=" << s;
        throw EvaluationError(os.str());
    }
    return v;
}

}  // namespace ecir
