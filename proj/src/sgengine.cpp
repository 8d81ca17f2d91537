#include "sgtk/sgengine.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "sgtk/error.hpp"

namespace sgtk::engine {

const char* to_string(FactKind kind)
{
    switch (kind) {
    case FactKind::PageWitness: return "page-witness";
    case FactKind::PositiveTb: return "positive-tb";
    case FactKind::SurgeryBound: return "surgery-bound";
    case FactKind::NonplanarSurgery: return "nonplanar-surgery";
    case FactKind::StabilizationOf: return "stabilization-of";
    case FactKind::OrientationMirror: return "orientation-mirror";
    case FactKind::ClassificationAxiom: return "classification-axiom";
    }
    return "?";
}

std::optional<FactKind> fact_kind_from_string(const std::string& s)
{
    for (auto k : {FactKind::PageWitness, FactKind::PositiveTb, FactKind::SurgeryBound, FactKind::NonplanarSurgery,
                   FactKind::StabilizationOf, FactKind::OrientationMirror, FactKind::ClassificationAxiom})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

const char* to_string(Rule rule)
{
    static const char* names[] = {"R1", "R2", "R3", "R4", "R5", "R6"};
    return names[static_cast<int>(rule)];
}

SGFact SGFact::page_witness(std::string subject, Int genus, std::string source)
{
    return {FactKind::PageWitness, {std::move(subject)}, {}, genus, KnotFamily::Torus, 0, std::move(source)};
}

SGFact SGFact::positive_tb(std::string subject, std::string source)
{
    return {FactKind::PositiveTb, {std::move(subject)}, {}, 0, KnotFamily::Torus, 0, std::move(source)};
}

SGFact SGFact::surgery_bound(std::string subject, Int bound, std::string source)
{
    return {FactKind::SurgeryBound, {std::move(subject)}, {}, bound, KnotFamily::Torus, 0, std::move(source)};
}

SGFact SGFact::nonplanar_surgery(std::vector<std::string> group, std::string source)
{
    return {FactKind::NonplanarSurgery, std::move(group), {}, 0, KnotFamily::Torus, 0, std::move(source)};
}

SGFact SGFact::stabilization_of(std::string child, std::string parent, int sign, std::string source)
{
    return {FactKind::StabilizationOf, {std::move(child)}, std::move(parent), sign, KnotFamily::Torus, 0,
            std::move(source)};
}

SGFact SGFact::orientation_mirror(std::string a, std::string b, std::string source)
{
    return {FactKind::OrientationMirror, {std::move(a)}, std::move(b), 0, KnotFamily::Torus, 0, std::move(source)};
}

SGFact SGFact::classification(std::string subject, KnotFamily family, Int parameter, std::string source)
{
    return {FactKind::ClassificationAxiom, {std::move(subject)}, {}, 0, family, parameter, std::move(source)};
}

std::string SGFact::describe() const
{
    std::ostringstream out;
    out << to_string(kind) << '(';
    switch (kind) {
    case FactKind::PageWitness:
        out << subject() << ", g=" << value;
        break;
    case FactKind::SurgeryBound:
        out << subject() << ", sg(M)>=" << value;
        break;
    case FactKind::NonplanarSurgery:
        for (std::size_t i = 0; i < subjects.size(); ++i)
            out << (i ? " | " : "") << subjects[i];
        break;
    case FactKind::StabilizationOf:
        out << subject() << " = S" << (value > 0 ? '+' : '-') << '(' << other << ')';
        break;
    case FactKind::OrientationMirror:
        out << subject() << " ~ " << other;
        break;
    case FactKind::ClassificationAxiom:
        out << subject() << ", " << (family == KnotFamily::Torus ? "T(2," : "K_{-")
            << (family == KnotFamily::Torus ? 2 * family_parameter + 1 : 2 * family_parameter)
            << (family == KnotFamily::Torus ? ")" : "}");
        break;
    case FactKind::PositiveTb:
        out << subject();
        break;
    }
    out << ')';
    if (!source.empty())
        out << " [" << source << ']';
    return out.str();
}

void SGFactBase::add_knot(LegendrianDesc knot)
{
    if (knot.name.empty())
        throw InputError("Legendrian knot without a name");
    if (index_.count(knot.name))
        throw InputError("duplicate Legendrian knot '" + knot.name + "'");
    index_.emplace(knot.name, knots_.size());
    knots_.push_back(std::move(knot));
}

std::size_t SGFactBase::add_fact(SGFact fact)
{
    facts_.push_back(std::move(fact));
    return facts_.size() - 1;
}

const LegendrianDesc& SGFactBase::knot(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw InputError("unknown Legendrian knot '" + name + "'");
    return knots_[it->second];
}

bool torus_mountain_check(Int k, Int tb, Int rot)
{
    if (k < 1)
        return false;
    const Int s = (2 * k - 1) - tb;
    if (s < 0)
        return false;
    const Int a = rot < 0 ? -rot : rot;
    return a <= s && (s - a) % 2 == 0;
}

bool trefoil_mountain_check(Int tb, Int rot)
{
    return torus_mountain_check(1, tb, rot);
}

namespace {

std::string fact_ref(const SGFactBase& base, std::size_t i)
{
    return "#" + std::to_string(i + 1) + " " + base.facts()[i].describe();
}

[[noreturn]] void inconsistent(const SGFactBase& base, const std::string& what, std::vector<std::size_t> facts)
{
    std::ostringstream out;
    out << "inconsistent facts: " << what;
    for (auto i : facts)
        out << "\n  " << fact_ref(base, i);
    throw InconsistentFacts(out.str(), std::move(facts));
}

void check_structure(const SGFactBase& base)
{
    const auto& facts = base.facts();
    for (std::size_t i = 0; i < facts.size(); ++i) {
        const SGFact& f = facts[i];
        const std::string where = "fact #" + std::to_string(i + 1) + " (" + to_string(f.kind) + ")";
        if (f.subjects.empty())
            throw InputError(where + " has no subject");
        if (f.kind != FactKind::NonplanarSurgery && f.subjects.size() != 1)
            throw InputError(where + " takes exactly one subject");
        for (const auto& s : f.subjects)
            if (!base.has_knot(s))
                throw InputError(where + " references unknown knot '" + s + "'");
        if (f.kind == FactKind::StabilizationOf || f.kind == FactKind::OrientationMirror) {
            if (!base.has_knot(f.other))
                throw InputError(where + " references unknown knot '" + f.other + "'");
            if (f.other == f.subject())
                throw InputError(where + " relates a knot to itself");
        }
        if (f.kind == FactKind::StabilizationOf && f.value != 1 && f.value != -1)
            throw InputError(where + " has stabilization sign " + std::to_string(f.value));
        if ((f.kind == FactKind::PageWitness || f.kind == FactKind::SurgeryBound) && f.value < 0)
            throw InputError(where + " carries a negative genus");
    }

    // stabilization-of must be acyclic
    std::map<std::string, std::vector<std::string>> parents;
    for (const auto& f : facts)
        if (f.kind == FactKind::StabilizationOf)
            parents[f.subject()].push_back(f.other);
    std::map<std::string, int> color;  // 0 new, 1 open, 2 done
    std::function<void(const std::string&)> visit = [&](const std::string& k) {
        color[k] = 1;
        for (const auto& p : parents[k]) {
            if (color[p] == 1)
                throw InputError("stabilization-of facts form a cycle through '" + p + "'");
            if (color[p] == 0)
                visit(p);
        }
        color[k] = 2;
    };
    for (const auto& kn : base.knots())
        if (color[kn.name] == 0)
            visit(kn.name);
}

void check_data(const SGFactBase& base)
{
    const auto& facts = base.facts();
    for (std::size_t i = 0; i < facts.size(); ++i) {
        const SGFact& f = facts[i];
        switch (f.kind) {
        case FactKind::PositiveTb: {
            const auto& k = base.knot(f.subject());
            if (k.tb <= 0)
                inconsistent(base, "'" + k.name + "' has tb = " + std::to_string(k.tb) + ", not positive", {i});
            break;
        }
        case FactKind::StabilizationOf: {
            const auto& c = base.knot(f.subject());
            const auto& p = base.knot(f.other);
            if (c.tb != p.tb - 1 || c.rot != p.rot + f.value)
                inconsistent(base,
                             "'" + c.name + "' (tb " + std::to_string(c.tb) + ", rot " + std::to_string(c.rot) +
                                 ") is not a stabilization of '" + p.name + "' (tb " + std::to_string(p.tb) +
                                 ", rot " + std::to_string(p.rot) + ")",
                             {i});
            break;
        }
        case FactKind::ClassificationAxiom: {
            const auto& k = base.knot(f.subject());
            bool ok = false;
            if (f.family == KnotFamily::Torus)
                ok = torus_mountain_check(f.family_parameter, k.tb, k.rot);
            else
                // twist knots K_{-2m}: tb <= 1 and tb + rot odd
                ok = f.family_parameter >= 1 && k.tb <= 1 && ((k.tb + k.rot) % 2 + 2) % 2 == 1;
            if (!ok)
                inconsistent(base,
                             "'" + k.name + "' (tb " + std::to_string(k.tb) + ", rot " + std::to_string(k.rot) +
                                 ") is outside the classified range",
                             {i});
            break;
        }
        default:
            break;
        }
    }
}

// Bounds plus the orientation-mirror classes, shared by derive and replay.
class State {
public:
    explicit State(const SGFactBase& base) : base_(base)
    {
        for (const auto& k : base.knots()) {
            bounds_[k.name] = {};
            root_[k.name] = k.name;
        }
        for (std::size_t i = 0; i < base.facts().size(); ++i) {
            const auto& f = base.facts()[i];
            if (f.kind == FactKind::OrientationMirror)
                root_[find(f.subject())] = find(f.other);
        }
    }

    const Bounds& at(const std::string& k) const { return bounds_.at(k); }
    std::map<std::string, Bounds>& all() { return bounds_; }

    std::string find(const std::string& k)
    {
        std::string r = k;
        while (root_[r] != r)
            r = root_[r];
        root_[k] = r;
        return r;
    }

    // Steps supported by fact i in the current state (tightening or not).
    std::vector<TraceStep> proposals(std::size_t i)
    {
        const SGFact& f = base_.facts()[i];
        std::vector<TraceStep> out;
        switch (f.kind) {
        case FactKind::PageWitness:
            out.push_back({Rule::R1, f.subject(), BoundSide::Upper, f.value, {i}, {}});
            break;
        case FactKind::PositiveTb:
            out.push_back({Rule::R3, f.subject(), BoundSide::Lower, 1, {i}, {}});
            break;
        case FactKind::SurgeryBound:
            out.push_back({Rule::R4, f.subject(), BoundSide::Lower, f.value, {i}, {}});
            break;
        case FactKind::StabilizationOf: {
            const Bounds& child = at(f.subject());
            const Bounds& parent = at(f.other);
            if (parent.hi)
                out.push_back({Rule::R2, f.subject(), BoundSide::Upper, *parent.hi, {i}, {f.other}});
            if (child.lo > 0)
                out.push_back({Rule::R2, f.other, BoundSide::Lower, child.lo, {i}, {f.subject()}});
            break;
        }
        case FactKind::OrientationMirror: {
            const std::string& a = f.subject();
            const std::string& b = f.other;
            for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                const Bounds& src = at(y);
                if (src.hi)
                    out.push_back({Rule::R6, x, BoundSide::Upper, *src.hi, {i}, {y}});
                if (src.lo > 0)
                    out.push_back({Rule::R6, x, BoundSide::Lower, src.lo, {i}, {y}});
            }
            break;
        }
        case FactKind::NonplanarSurgery: {
            std::vector<std::string> candidates;
            std::vector<std::string> excluded;
            for (const auto& m : f.subjects) {
                const Bounds& b = at(m);
                if (b.hi && *b.hi == 0)
                    excluded.push_back(m);
                else
                    candidates.push_back(m);
            }
            if (candidates.empty())
                return conflict_all_planar(i, excluded);
            const std::string root = find(candidates.front());
            for (const auto& c : candidates)
                if (find(c) != root)
                    return out;
            std::vector<std::size_t> cited{i};
            if (candidates.size() > 1)
                for (std::size_t j = 0; j < base_.facts().size(); ++j) {
                    const auto& g = base_.facts()[j];
                    if (g.kind == FactKind::OrientationMirror && find(g.subject()) == root)
                        cited.push_back(j);
                }
            std::vector<std::string> premises = excluded;
            premises.insert(premises.end(), candidates.begin(), candidates.end());
            for (const auto& c : candidates)
                out.push_back({Rule::R5, c, BoundSide::Lower, 1, cited, premises});
            break;
        }
        case FactKind::ClassificationAxiom:
            break;
        }
        return out;
    }

    // Tighten; returns false when the step adds nothing.
    bool apply(const TraceStep& s)
    {
        Bounds& b = bounds_.at(s.subject);
        if (s.side == BoundSide::Lower) {
            if (s.value <= b.lo)
                return false;
            b.lo = s.value;
        } else {
            if (b.hi && s.value >= *b.hi)
                return false;
            b.hi = s.value;
        }
        return true;
    }

private:
    std::vector<TraceStep> conflict_all_planar(std::size_t i, const std::vector<std::string>& excluded)
    {
        std::vector<std::size_t> cited{i};
        for (std::size_t j = 0; j < base_.facts().size(); ++j) {
            const auto& g = base_.facts()[j];
            if (g.kind == FactKind::PageWitness && g.value == 0 &&
                std::find(excluded.begin(), excluded.end(), g.subject()) != excluded.end())
                cited.push_back(j);
        }
        inconsistent(base_, "every member of a non-planar surgery group is bounded by genus 0", cited);
    }

    const SGFactBase& base_;
    std::map<std::string, Bounds> bounds_;
    std::map<std::string, std::string> root_;
};

}  // namespace

void SGFactBase::validate() const
{
    check_structure(*this);
    check_data(*this);
}

Stabilized stabilize_desc(const LegendrianDesc& knot, int sign)
{
    if (sign != 1 && sign != -1)
        throw InputError("stabilization sign must be +1 or -1");
    LegendrianDesc s = knot;
    s.name = std::string(sign > 0 ? "S+(" : "S-(") + knot.name + ")";
    s.tb = knot.tb - 1;
    s.rot = knot.rot + sign;
    s.tags.clear();
    SGFact f = SGFact::stabilization_of(s.name, knot.name, sign);
    return {std::move(s), std::move(f)};
}

Derivation derive_bounds(const SGFactBase& base)
{
    base.validate();
    State state(base);
    Derivation d;

    std::map<std::string, std::vector<std::size_t>> steps_for;
    auto clash_check = [&](const std::string& k) {
        const Bounds& b = state.at(k);
        if (!b.hi || b.lo <= *b.hi)
            return;
        std::vector<std::size_t> cited;
        const TraceStep* lo_step = nullptr;
        const TraceStep* hi_step = nullptr;
        for (auto idx : steps_for[k]) {
            const TraceStep& s = d.log[idx];
            (s.side == BoundSide::Lower ? lo_step : hi_step) = &s;
        }
        for (const TraceStep* s : {lo_step, hi_step})
            if (s)
                cited.insert(cited.end(), s->facts.begin(), s->facts.end());
        inconsistent(base,
                     "sg(" + k + ") >= " + std::to_string(b.lo) + " clashes with sg(" + k +
                         ") <= " + std::to_string(*b.hi),
                     cited);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < base.facts().size(); ++i)
            for (const auto& step : state.proposals(i))
                if (state.apply(step)) {
                    changed = true;
                    steps_for[step.subject].push_back(d.log.size());
                    d.log.push_back(step);
                    clash_check(step.subject);
                }
    }

    for (const auto& k : base.knots()) {
        SGInterval iv;
        iv.lo = state.at(k.name).lo;
        iv.hi = state.at(k.name).hi;
        for (auto idx : steps_for[k.name])
            iv.trace.push_back(d.log[idx]);
        d.intervals.emplace(k.name, std::move(iv));
    }
    return d;
}

std::map<std::string, Bounds> replay(const SGFactBase& base, const std::vector<TraceStep>& log)
{
    State state(base);
    for (std::size_t n = 0; n < log.size(); ++n) {
        const TraceStep& s = log[n];
        if (s.facts.empty() || s.facts.front() >= base.facts().size())
            throw std::logic_error("trace step " + std::to_string(n + 1) + " cites no valid fact");
        const auto props = state.proposals(s.facts.front());
        const bool supported = std::any_of(props.begin(), props.end(), [&](const TraceStep& p) { return p == s; });
        if (!supported)
            throw std::logic_error("trace step " + std::to_string(n + 1) + " (" + to_string(s.rule) + " on " +
                                   s.subject + ") does not follow from its premises");
        if (!state.apply(s))
            throw std::logic_error("trace step " + std::to_string(n + 1) + " does not tighten any bound");
    }
    return state.all();
}

Bounds fold_trace(const std::vector<TraceStep>& trace)
{
    Bounds b;
    for (const auto& s : trace) {
        if (s.side == BoundSide::Lower)
            b.lo = std::max(b.lo, s.value);
        else
            b.hi = b.hi ? std::min(*b.hi, s.value) : s.value;
    }
    return b;
}

std::string format_interval(const SGInterval& iv)
{
    return "[" + std::to_string(iv.lo) + ", " + (iv.hi ? std::to_string(*iv.hi) : std::string("inf")) + "]";
}

std::string format_step(const SGFactBase& base, const TraceStep& s)
{
    std::ostringstream out;
    out << to_string(s.rule) << "  " << (s.side == BoundSide::Lower ? "sg >= " : "sg <= ") << s.value << "  via ";
    for (std::size_t i = 0; i < s.facts.size(); ++i)
        out << (i ? ", " : "") << fact_ref(base, s.facts[i]);
    if (!s.premises.empty()) {
        out << "  reading ";
        for (std::size_t i = 0; i < s.premises.size(); ++i)
            out << (i ? ", " : "") << s.premises[i];
    }
    return out.str();
}

}  // namespace sgtk::engine
