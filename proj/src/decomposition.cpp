#include "jnsharp/decomposition.hpp"

#include <algorithm>
#include <map>

#include "jnsharp/errors.hpp"
#include "jnsharp/sunrise.hpp"

namespace jnsharp {

void DecompositionParams::validate() const {
    if (!(gamma.sign() > 0 && gamma < Rational(1))) throw PreconditionError("gamma must lie in (0, 1)");
    if (alpha_bar.sign() <= 0) throw PreconditionError("alpha_bar must be positive");
    if (max_depth < 1) throw PreconditionError("max_depth must be >= 1");
}

IntervalUnion DecompositionLayers::g(int k) const {
    if (k == 0) return IntervalUnion({domain});
    if (k < 0 || k > depth()) return {};
    return layers[static_cast<std::size_t>(k - 1)].g;
}

IntervalUnion DecompositionLayers::e(int k) const {
    if (k < 1 || k > depth()) return {};
    return layers[static_cast<std::size_t>(k - 1)].e;
}

IntervalUnion DecompositionLayers::f(int k) const {
    if (k < 1 || k > depth()) return {};
    return layers[static_cast<std::size_t>(k - 1)].f;
}

namespace {

struct Pending {
    Interval interval;
    Rational base;  // average of h over the interval
    int depth;
};

struct SideOutput {
    std::map<int, std::vector<Interval>> stopping;
    std::map<int, std::vector<Interval>> sets;
    std::vector<StoppingRecord> visits;
    bool complete = true;
};

// Runs one side on h (= f for E, -f for F).
SideOutput run_side(const StepFunction& f, const StepFunction& h, Side side, const DecompositionParams& params) {
    SideOutput out;
    std::vector<Pending> stack{{f.domain(), average(h, f.domain()), 0}};
    while (!stack.empty()) {
        Pending node = std::move(stack.back());
        stack.pop_back();
        const Rational level = node.base + params.alpha_bar;
        if (h.max_value(node.interval) <= level) continue;
        if (node.depth == params.max_depth) {
            out.complete = false;
            continue;
        }
        const IntervalUnion children = sunrise_decompose(h.restrict_to(node.interval).shifted(-node.base),
                                                         params.alpha_bar);
        if (children.empty()) continue;
        if (children.measure() > params.gamma * node.interval.length()) {
            throw PreconditionError("decompose: stopping intervals inside [" + node.interval.a().str() + ", " +
                                    node.interval.b().str() + ") exceed gamma times its length; alpha_bar " +
                                    params.alpha_bar.str() + " is below Omega/(2 gamma) there");
        }
        const int child_depth = node.depth + 1;
        const Rational f_parent = side == Side::E ? node.base : -node.base;
        out.visits.push_back({side, child_depth, node.interval, f_parent, children});
        const Rational f_child = side == Side::E ? level : -level;
        for (const auto& J : children.parts()) {
            out.stopping[child_depth].push_back(J);
            const auto mode = side == Side::E ? LevelMode::StrictlyAbove : LevelMode::AtOrBelow;
            const IntervalUnion level_set = super_level(f, J, f_child, mode);
            for (const auto& piece : level_set.parts()) out.sets[child_depth].push_back(piece);
            stack.push_back({J, level, child_depth});
        }
    }
    return out;
}

IntervalUnion collect(std::map<int, std::vector<Interval>>& m, int k) {
    auto it = m.find(k);
    if (it == m.end()) return {};
    return IntervalUnion(std::move(it->second));
}

void require_complete(const DecompositionLayers& layers) {
    if (!layers.complete) throw PreconditionError("decomposition is incomplete (depth cap reached)");
}

}  // namespace

DecompositionLayers decompose(const StepFunction& f, const DecompositionParams& params) {
    params.validate();
    SideOutput e_side = run_side(f, f, Side::E, params);
    SideOutput f_side = run_side(f, f.negated(), Side::F, params);

    int depth = 0;
    for (const auto& [k, v] : e_side.stopping) depth = std::max(depth, k);
    for (const auto& [k, v] : f_side.stopping) depth = std::max(depth, k);

    DecompositionLayers out{params, f.domain(), average(f, f.domain()), {}, {}, e_side.complete && f_side.complete};
    for (int k = 1; k <= depth; ++k) {
        Layer layer;
        layer.stopping_e = collect(e_side.stopping, k);
        layer.stopping_f = collect(f_side.stopping, k);
        layer.e = collect(e_side.sets, k);
        layer.f = collect(f_side.sets, k);
        layer.g = layer.e.unite(layer.f);
        out.layers.push_back(std::move(layer));
    }
    // Drop trailing layers whose G is empty; their stopping intervals carried
    // no mass above the level.
    while (!out.layers.empty() && out.layers.back().g.empty() && out.layers.back().stopping_e.empty() &&
           out.layers.back().stopping_f.empty()) {
        out.layers.pop_back();
    }
    out.visits = std::move(e_side.visits);
    out.visits.insert(out.visits.end(), f_side.visits.begin(), f_side.visits.end());
    return out;
}

StepFunction psi(const DecompositionLayers& layers) {
    require_complete(layers);
    std::vector<Rational> knots{layers.domain.a(), layers.domain.b()};
    for (const auto& layer : layers.layers) {
        const auto ends = layer.g.endpoints();
        knots.insert(knots.end(), ends.begin(), ends.end());
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<Rational> values;
    for (std::size_t c = 0; c + 1 < knots.size(); ++c) {
        long count = 1;
        for (const auto& layer : layers.layers) {
            if (layer.g.contains(knots[c])) ++count;
        }
        values.emplace_back(count);
    }
    return from_cells(knots, values);
}

PointwiseReport verify_pointwise(const StepFunction& f, const DecompositionLayers& layers) {
    require_complete(layers);
    const StepFunction majorant = psi(layers);
    const auto knots = common_knots(f, majorant);
    PointwiseReport report{true, Rational(0), Interval(knots[0], knots[1])};
    bool first = true;
    for (std::size_t c = 0; c + 1 < knots.size(); ++c) {
        const Rational slack = layers.params.alpha_bar * majorant(knots[c]) - abs(f(knots[c]) - layers.base);
        if (first || slack < report.min_slack) {
            report.min_slack = slack;
            report.worst_cell = Interval(knots[c], knots[c + 1]);
            first = false;
        }
    }
    report.pass = report.min_slack.sign() >= 0;
    return report;
}

namespace {

std::string show(const Interval& I) { return "[" + I.a().str() + ", " + I.b().str() + ")"; }

class Auditor {
public:
    void expect(const std::string& name, bool ok, const std::string& failure) {
        auto it = std::find_if(checks_.begin(), checks_.end(), [&](const auto& c) { return c.name == name; });
        if (it == checks_.end()) {
            checks_.push_back({name, true, ""});
            it = std::prev(checks_.end());
        }
        if (!ok && it->pass) {
            it->pass = false;
            it->detail = failure;
        }
    }

    void note(const std::string& name, const std::string& detail) {
        for (auto& c : checks_) {
            if (c.name == name && c.pass) c.detail = detail;
        }
    }

    std::vector<InvariantCheck> take() { return std::move(checks_); }

private:
    std::vector<InvariantCheck> checks_;
};

}  // namespace

std::vector<InvariantCheck> audit(const StepFunction& f, const DecompositionLayers& layers) {
    Auditor a;
    const auto& params = layers.params;
    const Rational total = layers.domain.length();
    const StepFunction neg = f.negated();

    for (const auto& v : layers.visits) {
        const bool e_side = v.side == Side::E;
        const Rational child_avg = e_side ? v.parent_average + params.alpha_bar : v.parent_average - params.alpha_bar;
        for (const auto& J : v.children.parts()) {
            a.expect("sunrise_average", average(f, J) == child_avg,
                     "average over " + show(J) + " is " + average(f, J).str() + ", expected " + child_avg.str());
        }
        // Off the selected intervals the (signed) function stays at or below the level.
        const IntervalUnion above = e_side ? super_level(f, v.parent, child_avg, LevelMode::StrictlyAbove)
                                           : super_level(neg, v.parent, -child_avg, LevelMode::StrictlyAbove);
        a.expect("sunrise_complement", v.children.includes(above),
                 "points above the level outside the selected intervals in " + show(v.parent));
        a.expect("packing", v.children.measure() <= params.gamma * v.parent.length(),
                 "selected measure " + v.children.measure().str() + " > gamma * |" + show(v.parent) + "|");
    }
    a.expect("sunrise_average", true, "");
    a.expect("sunrise_complement", true, "");
    a.expect("packing", true, "");

    for (int k = 1; k <= layers.depth(); ++k) {
        const auto& L = layers.layers[static_cast<std::size_t>(k - 1)];
        const Rational decay = pow(params.gamma, k) * total;
        const std::string at = " at depth " + std::to_string(k);
        a.expect("cumulative_decay", L.stopping_e.measure() <= decay && L.stopping_f.measure() <= decay,
                 "stopping measure exceeds gamma^k |I0|" + at);
        const Rational ladder = params.alpha_bar * Rational(k);
        for (const auto& J : L.stopping_e.parts()) {
            a.expect("base_ladder", average(f, J) == layers.base + ladder, "E interval " + show(J) + at);
        }
        for (const auto& J : L.stopping_f.parts()) {
            a.expect("base_ladder", average(f, J) == layers.base - ladder, "F interval " + show(J) + at);
        }
        a.expect("nesting", layers.e(k).includes(layers.e(k + 1)) && layers.f(k).includes(layers.f(k + 1)),
                 "E_{k+1} or F_{k+1} not nested" + at);
        a.expect("e_f_disjoint", L.e.disjoint_from(L.f), "E_k meets F_k" + at);
        a.expect("g_is_union", L.g == L.e.unite(L.f), "G_k differs from E_k u F_k" + at);
        a.expect("e_f_measure", L.e.measure() <= decay && L.f.measure() <= decay,
                 "|E_k| or |F_k| exceeds gamma^k |I0|" + at);
        const Rational g_cap = min(Rational(2) * pow(params.gamma, k), Rational(1)) * total;
        a.expect("g_measure", L.g.measure() <= g_cap,
                 "|G_k| = " + L.g.measure().str() + " exceeds " + g_cap.str() + at);
    }
    for (const char* name : {"cumulative_decay", "base_ladder", "nesting", "e_f_disjoint", "g_is_union",
                             "e_f_measure", "g_measure"}) {
        a.expect(name, true, "");
    }

    a.expect("complete", layers.complete, "depth cap " + std::to_string(params.max_depth) + " reached");
    if (layers.complete) {
        const auto pw = verify_pointwise(f, layers);
        a.expect("pointwise_majorant", pw.pass,
                 "slack " + pw.min_slack.str() + " on " + show(pw.worst_cell));
        a.note("pointwise_majorant", "min slack " + pw.min_slack.str() + " on " + show(pw.worst_cell));

        const StepFunction ps = psi(layers);
        for (int k = 0; k <= layers.depth() + 1; ++k) {
            const Rational cap = min(Rational(2) * pow(params.gamma, k), Rational(1)) * total;
            for (const Rational& t : {Rational(k), Rational(2 * k + 1, 2)}) {
                const Rational tail = distribution(ps, Rational(0), t);
                a.expect("psi_distribution_identity", tail == layers.g(k).measure(),
                         "|{psi > " + t.str() + "}| = " + tail.str() + " != |G_" + std::to_string(k) + "|");
                a.expect("psi_distribution_bound", tail <= cap,
                         "|{psi > " + t.str() + "}| = " + tail.str() + " exceeds " + cap.str());
            }
        }
    }
    return a.take();
}

}  // namespace jnsharp
