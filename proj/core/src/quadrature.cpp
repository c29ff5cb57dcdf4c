#include "shapectl/quadrature.hpp"

#include <cmath>
#include <string>

#include "shapectl/error.hpp"

namespace shapectl {

namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

class AdaptiveSimpson {
public:
    AdaptiveSimpson(const std::function<double(double)>& f, int max_depth)
        : f_(f), max_depth_(max_depth) {}

    double eval(double x) {
        ++result_.evaluations;
        return f_(x);
    }

    Panel make_panel(double a, double fa, double b, double fb) {
        const double m = 0.5 * (a + b);
        const double fm = eval(m);
        return {a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
    }

    double refine(const Panel& p, double tol, int depth) {
        const Panel left = make_panel(p.a, p.fa, p.m, p.fm);
        const Panel right = make_panel(p.m, p.fm, p.b, p.fb);
        const double diff = left.whole + right.whole - p.whole;
        if (std::abs(diff) <= 15.0 * tol) {
            result_.error_estimate += std::abs(diff) / 15.0;
            return left.whole + right.whole + diff / 15.0;
        }
        if (depth >= max_depth_) {
            throw Error(ErrorCode::QuadratureFailure,
                        "adaptive Simpson hit depth " + std::to_string(max_depth_) + " near x=" +
                            std::to_string(p.m));
        }
        return refine(left, 0.5 * tol, depth + 1) + refine(right, 0.5 * tol, depth + 1);
    }

    QuadratureResult run(double a, double b, double tol) {
        const Panel whole = make_panel(a, eval(a), b, eval(b));
        result_.value = refine(whole, tol, 0);
        return result_;
    }

private:
    const std::function<double(double)>& f_;
    int max_depth_;
    QuadratureResult result_;
};

}  // namespace

QuadratureResult integrate_adaptive_simpson(const std::function<double(double)>& f, double a,
                                            double b, double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidParams, "quad_tol must be > 0", "quad_tol");
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate_adaptive_simpson(f, b, a, abs_tol, max_depth);
        r.value = -r.value;
        return r;
    }
    return AdaptiveSimpson(f, max_depth).run(a, b, abs_tol);
}

}  // namespace shapectl
