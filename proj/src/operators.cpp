#include <cmath>

#include "evomlp/de.hpp"
#include "evomlp/format.hpp"
#include "evomlp/ga.hpp"
#include "evomlp/pso.hpp"

namespace evomlp {

namespace {

std::string got(double v) { return " (got " + format_real(v) + ")"; }

bool in_closed(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

}  // namespace

namespace pso {

std::vector<std::string> Params::check() const {
    std::vector<std::string> problems;
    if (!(std::isfinite(phi_p) && phi_p >= 0.0))
        problems.push_back("pso.phi_p must be a nonnegative real" + got(phi_p));
    if (!(std::isfinite(phi_g) && phi_g >= 0.0))
        problems.push_back("pso.phi_g must be a nonnegative real" + got(phi_g));
    if (const auto* c = std::get_if<ConstantInertia>(&inertia)) {
        if (!std::isfinite(c->weight))
            problems.push_back("pso.w must be finite" + got(c->weight));
    } else if (const auto* l = std::get_if<LinearInertia>(&inertia)) {
        if (!(std::isfinite(l->start) && std::isfinite(l->end) && l->start > l->end))
            problems.push_back("linear inertia requires w(0) > w(T_max)" + std::string(" (got w0=") +
                               format_real(l->start) + ", wT=" + format_real(l->end) + ")");
    } else {
        const auto& n = std::get<NonlinearInertia>(inertia);
        if (!(std::isfinite(n.start) && n.start < 1.0))
            problems.push_back("nonlinear inertia requires w(0) < 1" + got(n.start));
        if (!std::isfinite(n.end))
            problems.push_back("pso.wT must be finite" + got(n.end));
    }
    return problems;
}

}  // namespace pso

namespace de {

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Rand1:
        return "rand1";
    case Strategy::Rand2:
        return "rand2";
    case Strategy::Best1:
        return "best1";
    case Strategy::Best2:
        return "best2";
    case Strategy::CurrentToBest:
        return "current_to_best";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (auto s : {Strategy::Rand1, Strategy::Rand2, Strategy::Best1, Strategy::Best2, Strategy::CurrentToBest})
        if (name == to_string(s))
            return s;
    throw ValidationError("unknown DE strategy '" + std::string(name) +
                          "' (expected rand1, rand2, best1, best2 or current_to_best)");
}

std::vector<std::string> Params::check() const {
    std::vector<std::string> problems;
    if (!in_closed(f_scale, 0.0, 2.0))
        problems.push_back("de.f must satisfy F in [0, 2]" + got(f_scale));
    if (!(std::isfinite(cr) && cr > 0.0 && cr <= 1.0))
        problems.push_back("de.cr must satisfy CR in (0, 1]" + got(cr));
    return problems;
}

}  // namespace de

namespace ga {

std::string_view to_string(SelectionKind s) {
    return s == SelectionKind::Tournament ? "tournament" : "roulette";
}

std::string_view to_string(MutationKind m) {
    return m == MutationKind::RandomSubstitution ? "substitution" : "interchange";
}

SelectionKind parse_selection(std::string_view name) {
    if (name == "tournament")
        return SelectionKind::Tournament;
    if (name == "roulette")
        return SelectionKind::FitnessProportionate;
    throw ValidationError("unknown GA selection '" + std::string(name) + "' (expected tournament or roulette)");
}

MutationKind parse_mutation(std::string_view name) {
    if (name == "substitution")
        return MutationKind::RandomSubstitution;
    if (name == "interchange")
        return MutationKind::RandomInterchange;
    throw ValidationError("unknown GA mutation '" + std::string(name) + "' (expected substitution or interchange)");
}

std::vector<std::string> Params::check() const {
    std::vector<std::string> problems;
    if (!(std::isfinite(cr) && cr > 0.0 && cr <= 1.0))
        problems.push_back("ga.cr must satisfy CR in (0, 1]" + got(cr));
    if (!in_closed(p_m, 0.0, 1.0))
        problems.push_back("ga.p_m must satisfy p_m in [0, 1]" + got(p_m));
    return problems;
}

}  // namespace ga

}  // namespace evomlp
