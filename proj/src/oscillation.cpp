#include "jnsharp/oscillation.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jnsharp/errors.hpp"

namespace jnsharp {

namespace {

// Walks the cells meeting I, calling fn(value, overlap_length).
template <class Fn>
void for_each_overlap(const StepFunction& f, const Interval& I, Fn&& fn) {
    const auto& k = f.knots();
    for (std::size_t c = f.cell_index(I.a()); c < f.cell_count() && k[c] < I.b(); ++c) {
        fn(f.values()[c], min(k[c + 1], I.b()) - max(k[c], I.a()));
    }
}

void require_inside(const StepFunction& f, const Interval& I) {
    if (!f.domain().contains(I)) {
        throw DomainError("interval [" + I.a().str() + ", " + I.b().str() + ") is not inside the domain");
    }
}

}  // namespace

Rational mean_osc(const StepFunction& f, const Interval& I) {
    require_inside(f, I);
    const Rational avg = average(f, I);
    Rational sum;
    for_each_overlap(f, I, [&](const Rational& v, const Rational& len) { sum += abs(v - avg) * len; });
    return sum / I.length();
}

Rational positive_part_osc(const StepFunction& f, const Interval& I) {
    require_inside(f, I);
    const Rational avg = average(f, I);
    Rational sum;
    for_each_overlap(f, I, [&](const Rational& v, const Rational& len) {
        if (v > avg) sum += (v - avg) * len;
    });
    return Rational(2) * sum / I.length();
}

Rational negative_part_osc(const StepFunction& f, const Interval& I) {
    require_inside(f, I);
    const Rational avg = average(f, I);
    Rational sum;
    for_each_overlap(f, I, [&](const Rational& v, const Rational& len) {
        if (v <= avg) sum += (avg - v) * len;
    });
    return Rational(2) * sum / I.length();
}

Enclosure BmoEnclosure::bounds(int bits) const {
    return hull(Enclosure(attained, bits), Enclosure(upper, bits));
}

namespace {

// c0 + cp*p + cq*q
struct Affine {
    Rational c0, cp, cq;

    [[nodiscard]] Rational at(const Rational& p, const Rational& q) const { return c0 + cp * p + cq * q; }
    [[nodiscard]] bool is_constant() const { return cp.is_zero() && cq.is_zero(); }
};

struct Point {
    Rational p, q;
};

// n0 + n1 p + n2 q + npp p^2 + nqq q^2 + npq p q
struct Quadratic {
    Rational n0, n1, n2, npp, nqq, npq;
};

Quadratic product(const Affine& x, const Affine& y) {
    return {x.c0 * y.c0,
            x.c0 * y.cp + x.cp * y.c0,
            x.c0 * y.cq + x.cq * y.c0,
            x.cp * y.cp,
            x.cq * y.cq,
            x.cp * y.cq + x.cq * y.cp};
}

Quadratic difference(const Quadratic& x, const Quadratic& y) {
    return {x.n0 - y.n0, x.n1 - y.n1, x.n2 - y.n2, x.npp - y.npp, x.nqq - y.nqq, x.npq - y.npq};
}

// Omega on one region of the (p, q) box: 2 (P L - Q S) / L^2 where P and Q
// are the integral and measure of the above-f_I part.
struct RegionModel {
    Affine L, S, P, Q;
    std::vector<Affine> halfplanes;  // region = { h >= 0 for all h }

    [[nodiscard]] std::optional<Rational> value(const Point& x) const {
        const Rational len = L.at(x.p, x.q);
        if (len.sign() <= 0) return std::nullopt;
        const Rational n = P.at(x.p, x.q) * len - Q.at(x.p, x.q) * S.at(x.p, x.q);
        return Rational(2) * n / (len * len);
    }
};

struct Best {
    Rational value;
    std::size_t i = 0, j = 0;
    Point at;
    bool from_pair = false;
};

class PairSearch {
public:
    PairSearch(const RegionModel& m, std::size_t i, std::size_t j, Best& best) : m_(m), i_(i), j_(j), best_(best) {}

    void consider(const Point& x) {
        auto v = m_.value(x);
        if (v && *v > best_.value) {
            best_.value = *v;
            best_.i = i_;
            best_.j = j_;
            best_.at = x;
            best_.from_pair = true;
        }
    }

    // Clips the line {line == 0} to the region and examines the resulting
    // segment: both endpoints and the critical point of Omega along it.
    void scan_line(const Affine& line) {
        if (line.is_constant()) return;
        Point x0;
        if (!line.cq.is_zero()) {
            x0 = {Rational(0), -line.c0 / line.cq};
        } else {
            x0 = {-line.c0 / line.cp, Rational(0)};
        }
        const Point dir{-line.cq, line.cp};
        std::optional<Rational> tlo;
        std::optional<Rational> thi;
        for (const auto& h : m_.halfplanes) {
            const Rational h0 = h.at(x0.p, x0.q);
            const Rational slope = h.cp * dir.p + h.cq * dir.q;
            if (slope.is_zero()) {
                if (h0.sign() < 0) return;
                continue;
            }
            const Rational t = -h0 / slope;
            if (slope.sign() > 0) {
                if (!tlo || *tlo < t) tlo = t;
            } else {
                if (!thi || t < *thi) thi = t;
            }
        }
        if (!tlo || !thi || *thi < *tlo) return;
        const Point e1{x0.p + *tlo * dir.p, x0.q + *tlo * dir.q};
        const Point e2{x0.p + *thi * dir.p, x0.q + *thi * dir.q};
        consider(e1);
        if (*thi == *tlo) return;
        consider(e2);
        // Along x(s) = e1 + s (e2 - e1): N(s) = a s^2 + b s + c, L(s) = d s + e.
        auto split = [&](const Affine& f) {
            const Rational f0 = f.at(e1.p, e1.q);
            return std::pair{f0, f.at(e2.p, e2.q) - f0};
        };
        const auto [P0, P1] = split(m_.P);
        const auto [Q0, Q1] = split(m_.Q);
        const auto [S0, S1] = split(m_.S);
        const auto [L0, L1] = split(m_.L);
        const Rational a = P1 * L1 - Q1 * S1;
        const Rational b = P0 * L1 + P1 * L0 - Q0 * S1 - Q1 * S0;
        const Rational c = P0 * L0 - Q0 * S0;
        const Rational den = Rational(2) * a * L0 - b * L1;
        if (den.is_zero()) return;
        const Rational s = (Rational(2) * L1 * c - b * L0) / den;
        if (s.sign() > 0 && s < Rational(1)) {
            consider({e1.p + s * (e2.p - e1.p), e1.q + s * (e2.q - e1.q)});
        }
    }

private:
    const RegionModel& m_;
    std::size_t i_, j_;
    Best& best_;
};

void search_pair(const StepFunction& f, std::size_t i, std::size_t j, Best& best) {
    const auto& x = f.knots();
    const auto& v = f.values();
    const Rational li = x[i + 1] - x[i];
    const Rational lj = x[j + 1] - x[j];
    const Rational mid_len = x[j] - x[i + 1];
    const Rational mid_int = f.prefix_integral(j) - f.prefix_integral(i + 1);
    const Rational& u = v[i];
    const Rational& w = v[j];

    // Omega <= (max - min) / 2 for any interval.
    Rational vmax = max(u, w);
    Rational vmin = min(u, w);
    for (std::size_t c = i + 1; c < j; ++c) {
        vmax = max(vmax, v[c]);
        vmin = min(vmin, v[c]);
    }
    if ((vmax - vmin) / Rational(2) <= best.value) return;

    const Affine L{mid_len, Rational(1), Rational(1)};
    const Affine S{mid_int, u, w};

    // Range of f_I over the box: f_I is monotone in p and in q separately, so
    // its extremes sit at the corners (or at u, w in the adjacent-cell limit).
    std::optional<Rational> rlo;
    std::optional<Rational> rhi;
    auto widen = [&](const Rational& t) {
        if (!rlo || t < *rlo) rlo = t;
        if (!rhi || *rhi < t) rhi = t;
    };
    for (const auto& p : {Rational(0), li}) {
        for (const auto& q : {Rational(0), lj}) {
            const Rational len = L.at(p, q);
            if (len.sign() > 0) widen(S.at(p, q) / len);
        }
    }
    if (mid_len.is_zero()) {
        widen(u);
        widen(w);
    }

    std::vector<Rational> levels(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(j) + 1);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Middle cells by decreasing value, accumulated into the above-set as the
    // gap moves down.
    std::vector<std::pair<Rational, Rational>> middle;
    for (std::size_t c = i + 1; c < j; ++c) middle.emplace_back(v[c], x[c + 1] - x[c]);
    std::sort(middle.begin(), middle.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
    std::size_t taken = 0;
    Rational mid_above_int;
    Rational mid_above_len;

    RegionModel model;
    model.L = L;
    model.S = S;
    model.halfplanes = {Affine{Rational(0), Rational(1), Rational(0)}, Affine{li, Rational(-1), Rational(0)},
                        Affine{Rational(0), Rational(0), Rational(1)}, Affine{lj, Rational(0), Rational(-1)},
                        Affine{}, Affine{}};

    for (std::size_t k = levels.size() - 1; k >= 1; --k) {
        const Rational& t_hi = levels[k];
        const Rational& t_lo = levels[k - 1];
        while (taken < middle.size() && middle[taken].first >= t_hi) {
            mid_above_int += middle[taken].first * middle[taken].second;
            mid_above_len += middle[taken].second;
            ++taken;
        }
        if (t_hi < *rlo || *rhi < t_lo) continue;

        const bool u_above = u >= t_hi;
        const bool w_above = w >= t_hi;
        model.P = Affine{mid_above_int, u_above ? u : Rational(0), w_above ? w : Rational(0)};
        model.Q = Affine{mid_above_len, Rational(u_above ? 1 : 0), Rational(w_above ? 1 : 0)};
        // t_lo <= S/L <= t_hi
        model.halfplanes[4] = Affine{mid_int - t_lo * mid_len, u - t_lo, w - t_lo};
        model.halfplanes[5] = Affine{t_hi * mid_len - mid_int, t_hi - u, t_hi - w};

        PairSearch search(model, i, j, best);
        for (const auto& h : model.halfplanes) search.scan_line(h);

        const Quadratic N = difference(product(model.P, L), product(model.Q, S));
        // dN/dp - dN/dq = 0
        const Affine critical{N.n1 - N.n2, Rational(2) * N.npp - N.npq, N.npq - Rational(2) * N.nqq};
        search.scan_line(critical);
    }
}

}  // namespace

BmoEnclosure bmo_norm(const StepFunction& f, const Rational& tolerance) {
    if (tolerance.sign() <= 0) throw PreconditionError("bmo_norm: tolerance must be positive");
    const std::size_t n = f.cell_count();
    Best best;
    best.value = mean_osc(f, f.domain());

    // Widest value ranges first so the pruning bound bites early.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<Rational> spread(pairs.size());
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto [i, j] = pairs[idx];
        const Interval I(f.knots()[i], f.knots()[j + 1]);
        spread[idx] = f.max_value(I) - f.min_value(I);
    }
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t idx = 0; idx < order.size(); ++idx) order[idx] = idx;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spread[b] < spread[a]; });

    for (auto idx : order) {
        if (spread[idx] / Rational(2) <= best.value) break;
        search_pair(f, pairs[idx].first, pairs[idx].second, best);
    }

    Interval witness = f.domain();
    if (best.from_pair) {
        witness = Interval(f.knots()[best.i + 1] - best.at.p, f.knots()[best.j] + best.at.q);
    }
    const Rational attained = mean_osc(f, witness);
    if (attained != best.value) {
        throw std::logic_error("bmo_norm: witness oscillation " + attained.str() + " disagrees with model value " +
                               best.value.str());
    }
    return {attained, attained, witness, tolerance};
}

}  // namespace jnsharp
