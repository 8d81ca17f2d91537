/**
 * Support-genus bounds by forward chaining over Legendrian knot facts.
 *
 * Every knot starts at sg in [0, inf). Facts feed six monotone rules that only
 * ever raise lower bounds or lower upper bounds, so the fixed point does not
 * depend on the order facts are listed or visited:
 *
 *   R1 page-witness(g)            K sits on a genus-g page with page framing = contact framing: hi <= g
 *   R2 stabilization-of(P, +-)    sg(S(P)) <= sg(P): hi(child) <= hi(P), lo(P) >= lo(child)
 *   R3 positive-tb                tb > 0 in a fillable structure: lo >= 1
 *   R4 surgery-bound(g)           surgery on K yields a manifold with support genus >= g: lo >= g
 *   R5 nonplanar-surgery(group)   surgery on some member has no planar open book; once every member
 *                                 but one mirror class is pinned to hi = 0, that class gets lo >= 1
 *   R6 orientation-mirror(Q)      K and Q differ only by orientation: they share bounds
 *
 * A lower bound exceeding an upper bound raises InconsistentFacts naming both
 * sides; nothing is clamped.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgtk/zlinalg.hpp"

namespace sgtk::engine {

using zlinalg::Int;

struct LegendrianDesc {
    std::string name;
    std::string topo_type;
    Int tb = 0;
    Int rot = 0;
    std::vector<std::string> tags;

    friend bool operator==(const LegendrianDesc&, const LegendrianDesc&) = default;
};

enum class FactKind {
    PageWitness,
    PositiveTb,
    SurgeryBound,
    NonplanarSurgery,
    StabilizationOf,
    OrientationMirror,
    ClassificationAxiom,
};

const char* to_string(FactKind kind);
std::optional<FactKind> fact_kind_from_string(const std::string& s);

enum class KnotFamily { Torus, Twist };

struct SGFact {
    FactKind kind = FactKind::PageWitness;
    std::vector<std::string> subjects;  // one knot, or the group for nonplanar-surgery
    std::string other;                  // stabilization parent / mirror partner
    Int value = 0;                      // genus, bound, or stabilization sign
    KnotFamily family = KnotFamily::Torus;
    Int family_parameter = 0;           // k for T(2,2k+1), m for K_{-2m}
    std::string source;

    static SGFact page_witness(std::string subject, Int genus, std::string source = {});
    static SGFact positive_tb(std::string subject, std::string source = {});
    static SGFact surgery_bound(std::string subject, Int bound, std::string source = {});
    static SGFact nonplanar_surgery(std::vector<std::string> group, std::string source = {});
    static SGFact stabilization_of(std::string child, std::string parent, int sign, std::string source = {});
    static SGFact orientation_mirror(std::string a, std::string b, std::string source = {});
    static SGFact classification(std::string subject, KnotFamily family, Int parameter, std::string source = {});

    const std::string& subject() const { return subjects.front(); }
    std::string describe() const;

    friend bool operator==(const SGFact&, const SGFact&) = default;
};

class InconsistentFacts : public std::runtime_error {
public:
    InconsistentFacts(std::string report, std::vector<std::size_t> clashing)
        : std::runtime_error(std::move(report)), clashing_(std::move(clashing))
    {
    }
    const std::vector<std::size_t>& clashing_facts() const { return clashing_; }

private:
    std::vector<std::size_t> clashing_;
};

class SGFactBase {
public:
    void add_knot(LegendrianDesc knot);
    std::size_t add_fact(SGFact fact);

    const std::vector<LegendrianDesc>& knots() const { return knots_; }
    const std::vector<SGFact>& facts() const { return facts_; }
    bool has_knot(const std::string& name) const { return index_.count(name) != 0; }
    const LegendrianDesc& knot(const std::string& name) const;

    /**
     * Structural checks (dangling names, acyclic stabilizations; InputError)
     * and data checks against the facts' own claims (InconsistentFacts):
     * positive-tb needs tb > 0, stabilizations must shift (tb, rot) by
     * (-1, +-1), classification facts must match the knot's mountain range.
     */
    void validate() const;

    friend bool operator==(const SGFactBase&, const SGFactBase&) = default;

private:
    std::vector<LegendrianDesc> knots_;
    std::vector<SGFact> facts_;
    std::map<std::string, std::size_t> index_;
};

struct Stabilized {
    LegendrianDesc knot;
    SGFact fact;
};

/// S+ / S-: tb - 1, rot + sign. The new knot is named "S+(L)" / "S-(L)".
Stabilized stabilize_desc(const LegendrianDesc& knot, int sign);

/// Legendrian T(2,2k+1), k >= 1: tb = 2k - 1 - s with rot in {-s, -s+2, ..., s}.
bool torus_mountain_check(Int k, Int tb, Int rot);

/// Right-handed trefoil: (1, 0) is the unique top; tb = -n allows rot = 2i - n - 3, i = 1..n+2.
bool trefoil_mountain_check(Int tb, Int rot);

enum class Rule { R1, R2, R3, R4, R5, R6 };
enum class BoundSide { Lower, Upper };

const char* to_string(Rule rule);

struct TraceStep {
    Rule rule = Rule::R1;
    std::string subject;
    BoundSide side = BoundSide::Upper;
    Int value = 0;
    std::vector<std::size_t> facts;     // indices into SGFactBase::facts()
    std::vector<std::string> premises;  // knots whose bounds the step read

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct SGInterval {
    Int lo = 0;
    std::optional<Int> hi;  // empty = unbounded
    std::vector<TraceStep> trace;

    bool exact() const { return hi && *hi == lo; }
};

struct Derivation {
    std::map<std::string, SGInterval> intervals;
    std::vector<TraceStep> log;  // global application order
};

/// Validates, then runs R1-R6 to a fixed point.
Derivation derive_bounds(const SGFactBase& base);

struct Bounds {
    Int lo = 0;
    std::optional<Int> hi;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/**
 * Re-run a derivation log step by step from the default state. Each step's
 * rule is re-checked against the cited facts and the current bounds of its
 * premises; a step that no longer follows throws std::logic_error.
 */
std::map<std::string, Bounds> replay(const SGFactBase& base, const std::vector<TraceStep>& log);

/// Fold a single interval's trace: max of lower steps, min of upper steps.
Bounds fold_trace(const std::vector<TraceStep>& trace);

std::string format_interval(const SGInterval& interval);
std::string format_step(const SGFactBase& base, const TraceStep& step);

}  // namespace sgtk::engine
