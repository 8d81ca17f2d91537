#include "sgtk/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sgtk/commands.hpp"
#include "sgtk/fixtures.hpp"
#include "sgtk/hfbook.hpp"
#include "sgtk/ribbon.hpp"
#include "sgtk/seifert.hpp"
#include "sgtk/sgengine.hpp"
#include "sgtk/stein.hpp"
#include "sgtk/zlinalg.hpp"

namespace sgtk::verify {

using zlinalg::Int;
using zlinalg::IntMatrix;
using zlinalg::IntVector;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024;

// Collects failures; keeps the first few messages for the detail line.
class Check {
public:
    void expect(bool cond, const std::string& msg)
    {
        ++checks_;
        if (cond)
            return;
        ++failures_;
        if (failures_ <= 3)
            notes_ += (notes_.empty() ? "" : "; ") + msg;
    }
    bool ok() const { return failures_ == 0; }
    std::string detail(const std::string& success) const
    {
        if (ok())
            return success;
        return std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed: " + notes_;
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string notes_;
};

CriterionResult guarded(int id, std::string title, const std::function<std::string(Check&)>& body)
{
    CriterionResult r{id, std::move(title), false, {}};
    Check c;
    try {
        const std::string success = body(c);
        r.passed = c.ok();
        r.detail = c.detail(success);
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

const nlohmann::json* find_named(const nlohmann::json& list, const std::string& name)
{
    for (const auto& x : list)
        if (x.at("name") == name)
            return &x;
    return nullptr;
}

IntVector unit(std::size_t n, std::size_t i, Int v = 1)
{
    IntVector e(n, 0);
    e[i] = v;
    return e;
}

const stein::SteinProblem& twist_problem(const doc::InputDocument& d)
{
    return d.stein_problem("W").problem;
}

// --- criteria ------------------------------------------------------------

CriterionResult torus_tb()
{
    return guarded(1, "torus-knot tb = 2k-1 on the genus-1 page", [](Check& c) {
        std::string got;
        for (Int k = 1; k <= 3; ++k) {
            const auto rep = cmd::run_command("tb", fixtures::load("fig1_torus_k" + std::to_string(k)));
            const auto* K = find_named(rep.machine.at("curves"), "K");
            c.expect(K != nullptr, "k=" + std::to_string(k) + ": no curve K");
            if (!K)
                continue;
            const Int tb = K->at("tb").get<Int>();
            c.expect(tb == 2 * k - 1, "k=" + std::to_string(k) + ": tb " + std::to_string(tb));
            got += (got.empty() ? "" : ", ") + std::to_string(tb);
        }
        return "tb(K) for k=1,2,3: " + got;
    });
}

CriterionResult twist_tb()
{
    return guarded(2, "twist-knot tb = -1 on the planar page", [](Check& c) {
        std::string got;
        for (int m = 1; m <= 5; ++m) {
            const auto rep = cmd::run_command("tb", fixtures::load("fig3_twist_m" + std::to_string(m)));
            const auto* K = find_named(rep.machine.at("curves"), "K");
            c.expect(K != nullptr, "m=" + std::to_string(m) + ": no curve K");
            if (!K)
                continue;
            const Int tb = K->at("tb").get<Int>();
            c.expect(tb == -1, "m=" + std::to_string(m) + ": tb " + std::to_string(tb));
            const auto& surf = rep.machine.at("surfaces").at(0);
            c.expect(surf.at("genus") == 0, "m=" + std::to_string(m) + ": page is not planar");
            got += (got.empty() ? "" : ", ") + std::to_string(tb);
        }
        return "tb(K) for m=1..5: " + got + " (planar pages)";
    });
}

CriterionResult boundary_listing()
{
    return guarded(3, "boundary matrix d2 column by column", [](Check& c) {
        for (std::size_t m = 1; m <= 4; ++m) {
            const auto d = fixtures::load("fig3_twist_m" + std::to_string(m));
            const auto& p = twist_problem(d);
            const std::size_t n = m + 2;
            // Expected listing: gamma_1 -> X2, gamma_2 -> X1 - X2, gamma_i -> X_{i-1} - X_i, K -> -X2.
            std::vector<std::pair<std::string, IntVector>> want;
            want.push_back({"gamma1", unit(n, 1)});
            IntVector g2(n, 0);
            g2[0] = 1;
            g2[1] = -1;
            want.push_back({"gamma2", g2});
            for (std::size_t i = 3; i <= n; ++i) {
                IntVector g(n, 0);
                g[i - 2] = 1;
                g[i - 1] = -1;
                want.push_back({"gamma" + std::to_string(i), g});
            }
            want.push_back({"K", unit(n, 1, -1)});

            const IntMatrix d2 = stein::boundary_matrix(p);
            const std::string tag = "m=" + std::to_string(m);
            c.expect(d2.rows() == n && d2.cols() == want.size(), tag + ": shape");
            if (d2.cols() != want.size())
                continue;
            for (std::size_t j = 0; j < want.size(); ++j) {
                c.expect(p.curves[j].name == want[j].first, tag + ": column " + std::to_string(j) + " is " +
                                                                 p.curves[j].name);
                c.expect(d2.column(j) == want[j].second,
                         tag + ": d2(S_" + want[j].first + ") = " + zlinalg::to_string(d2.column(j)));
            }
        }
        return "m=1..4 match, d2(S_gamma1) = X2 and d2(S_K) = -X2";
    });
}

CriterionResult rotation()
{
    return guarded(4, "H2 generator S_K + S_gamma1 and rot(K) = 0", [](Check& c) {
        for (std::size_t m = 1; m <= 5; ++m) {
            const auto d = fixtures::load("fig3_twist_m" + std::to_string(m));
            const auto& p = twist_problem(d);
            const std::string tag = "m=" + std::to_string(m);
            const auto res = stein::rotation_number(p);
            IntVector want(p.curves.size(), 0);
            want[0] = 1;
            want[p.distinguished] = 1;
            c.expect(res.kernel_rank == 1, tag + ": kernel rank " + std::to_string(res.kernel_rank));
            c.expect(res.h && *res.h == want, tag + ": h");
            c.expect(res.rot && *res.rot == 0, tag + ": rot");

            const auto rep = cmd::run_command("rot", d);
            const auto& j = rep.machine.at("problems").at(0);
            c.expect(j.at("h_text") == "S_gamma1 + S_K", tag + ": report h " + j.at("h_text").dump());
            c.expect(j.at("rot") == 0, tag + ": report rot");
        }
        return "m=1..5: h = S_gamma1 + S_K, rot = 0";
    });
}

CriterionResult base_rotations()
{
    return guarded(5, "default planar base rotations", [](Check& c) {
        for (std::size_t m = 1; m <= 5; ++m) {
            const auto d = fixtures::load("fig3_twist_m" + std::to_string(m));
            const auto& p = twist_problem(d);
            const IntVector r = stein::c1_cochain(p);
            IntVector want(m + 3, -1);
            want.front() = 0;
            want.back() = 0;
            c.expect(r == want, "m=" + std::to_string(m) + ": " + zlinalg::to_string(r));
        }
        return "r(gamma1) = 0, r(gamma_i) = -1, r(K) = 0 for m=1..5";
    });
}

CriterionResult hf_bookkeeping()
{
    return guarded(6, "HF-hat ranks, HF_red and pigeonhole excess", [](Check& c) {
        for (Int n = 7; n <= 12; ++n) {
            const auto d = fixtures::load("hf_trefoil_n" + std::to_string(n));
            const auto& h = d.hf_modules.at(0);
            const std::string tag = "n=" + std::to_string(n);
            std::vector<Int> want(static_cast<std::size_t>(n + 1), 1);
            want[0] = 3;
            c.expect(hfbook::hf_hat(h.module) == want, tag + ": hat ranks");
            c.expect(hfbook::hf_red_rank(h.module) == 1, tag + ": HF_red rank");
            c.expect(h.classes && h.classes->class_count == n + 2, tag + ": class count");
            if (h.classes)
                c.expect(hfbook::pigeonhole_excess(*h.classes, h.module) == 1, tag + ": excess");
        }
        return "n=7..12: ranks (3,1,...,1), HF_red 1, excess 1";
    });
}

CriterionResult rotation_list()
{
    return guarded(7, "trefoil rotation lists", [](Check& c) {
        for (Int n = 1; n <= 12; ++n) {
            const auto got = hfbook::trefoil_rotation_list(n);
            std::vector<Int> want;
            for (Int i = 1; i <= n + 2; ++i)
                want.push_back(2 * i - n - 3);
            c.expect(got == want, "n=" + std::to_string(n));
            c.expect(std::set<Int>(got.begin(), got.end()).size() == got.size(), "n=" + std::to_string(n) + " repeats");
        }
        return "n=1..12: 2i-n-3, pairwise distinct";
    });
}

// Derivation of a named fact base plus replay checks; returns the derivation.
engine::Derivation derive_and_replay(const engine::SGFactBase& base, Check& c, const std::string& tag)
{
    auto der = engine::derive_bounds(base);
    const auto replayed = engine::replay(base, der.log);
    for (const auto& [name, iv] : der.intervals) {
        const engine::Bounds b{iv.lo, iv.hi};
        c.expect(replayed.at(name) == b, tag + ": replay differs for " + name);
        c.expect(engine::fold_trace(iv.trace) == b, tag + ": trace of " + name + " does not fold to its interval");
        for (const auto& s : iv.trace)
            c.expect(!engine::format_step(base, s).empty(), tag + ": empty trace line");
    }
    return der;
}

void expect_exact(Check& c, const engine::Derivation& der, const std::string& knot, Int v, const std::string& tag)
{
    auto it = der.intervals.find(knot);
    c.expect(it != der.intervals.end(), tag + ": no knot " + knot);
    if (it == der.intervals.end())
        return;
    c.expect(it->second.lo == v && it->second.hi && *it->second.hi == v,
             tag + ": " + knot + " " + engine::format_interval(it->second));
    c.expect(!it->second.trace.empty(), tag + ": " + knot + " has no trace");
}

std::string stab_name(int a, int b, const std::string& base)
{
    std::string s;
    if (a)
        s += "S+^" + std::to_string(a);
    if (b)
        s += "S-^" + std::to_string(b);
    return s + "(" + base + ")";
}

CriterionResult knot_families()
{
    return guarded(8, "support genus of the three knot families", [](Check& c) {
        std::size_t count = 0;
        {
            const auto d = fixtures::load("thm13_facts");
            const auto der = derive_and_replay(d.fact_base("thm13").base, c, "thm13");
            for (int k = 1; k <= 3; ++k, ++count)
                expect_exact(c, der, "T_m(2," + std::to_string(2 * k + 1) + ")", 1, "thm13");
        }
        {
            const auto d = fixtures::load("thm14_facts");
            const auto& base = d.fact_base("thm14").base;
            const auto der = derive_and_replay(base, c, "thm14");
            for (int m = 1; m <= 3; ++m) {
                expect_exact(c, der, "K_" + std::to_string(m), 0, "thm14");
                ++count;
                for (int a = 1; a < 8; ++a)
                    for (int b = 1; a + b <= 8; ++b) {
                        if (a == 1 && b == 1)
                            continue;
                        expect_exact(c, der, stab_name(a, b, "L_" + std::to_string(m)), 0, "thm14");
                        ++count;
                    }
            }
        }
        {
            const auto d = fixtures::load("thm15_facts");
            const auto der = derive_and_replay(d.fact_base("thm15").base, c, "thm15");
            expect_exact(c, der, stab_name(1, 1, "L"), 0, "thm15");
            for (int n = 2; n <= 6; ++n) {
                expect_exact(c, der, stab_name(n, 0, "L"), 1, "thm15");
                expect_exact(c, der, stab_name(0, n, "L"), 1, "thm15");
                count += 2;
            }
        }
        return std::to_string(count) + " intervals exact with replayable traces";
    });
}

// --- property suites -----------------------------------------------------

Int rand_int(std::mt19937_64& rng, Int lo, Int hi)
{
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Int lo, Int hi)
{
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            a(i, j) = rand_int(rng, lo, hi);
    return a;
}

// Matrix of rank at most k, to get nontrivial kernels and torsion.
IntMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k, Int bound)
{
    return random_matrix(rng, r, k, -bound, bound) * random_matrix(rng, k, c, -bound, bound);
}

// gcd of all k x k minors (0 if every minor vanishes).
Int determinantal_divisor(const IntMatrix& a, std::size_t k)
{
    std::vector<std::size_t> rows(a.rows()), cols(a.cols());
    Int g = 0;
    std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
        do {
            IntMatrix minor(k, k);
            std::size_t mi = 0;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                if (!rsel[i])
                    continue;
                std::size_t mj = 0;
                for (std::size_t j = 0; j < a.cols(); ++j)
                    if (csel[j])
                        minor(mi, mj++) = a(i, j);
                ++mi;
            }
            g = zlinalg::gcd(g, zlinalg::determinant(minor));
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return g;
}

bool is_unit(Int d)
{
    return d == 1 || d == -1;
}

std::size_t snf_suite(std::mt19937_64& rng, Check& c)
{
    const std::size_t trials = 1200;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto r = static_cast<std::size_t>(rand_int(rng, 1, 5));
        const auto k = static_cast<std::size_t>(rand_int(rng, 1, 5));
        const IntMatrix a = (t % 3 == 0) ? random_low_rank(rng, r, k, static_cast<std::size_t>(rand_int(rng, 1, 3)), 4)
                                         : random_matrix(rng, r, k, -9, 9);
        const auto s = zlinalg::smith_normal_form(a);
        const std::string tag = "snf #" + std::to_string(t);
        c.expect(s.U * a * s.V == s.D, tag + ": UAV != D");
        c.expect(is_unit(zlinalg::determinant(s.U)) && is_unit(zlinalg::determinant(s.V)), tag + ": not unimodular");
        const IntVector diag = s.diagonal();
        bool shape = true;
        for (std::size_t i = 0; i < s.D.rows(); ++i)
            for (std::size_t j = 0; j < s.D.cols(); ++j)
                if (i != j && s.D(i, j) != 0)
                    shape = false;
        c.expect(shape, tag + ": D not diagonal");
        for (std::size_t i = 0; i < diag.size(); ++i) {
            c.expect(diag[i] >= 0, tag + ": negative diagonal");
            if (i + 1 < diag.size())
                c.expect(diag[i] == 0 ? diag[i + 1] == 0 : diag[i + 1] % diag[i] == 0, tag + ": divisibility");
        }
        // Independent oracle: d_k(A) = s_1 ... s_k.
        if (std::min(r, k) <= 4) {
            Int prod = 1;
            for (std::size_t q = 1; q <= std::min(r, k); ++q) {
                prod = zlinalg::checked::mul(prod, diag[q - 1]);
                c.expect(determinantal_divisor(a, q) == prod, tag + ": d_" + std::to_string(q));
            }
        }
    }
    return trials;
}

std::size_t kernel_suite(std::mt19937_64& rng, Check& c)
{
    const std::size_t trials = 150;
    const Int box = 4;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto r = static_cast<std::size_t>(rand_int(rng, 1, 4));
        const auto n = static_cast<std::size_t>(rand_int(rng, 1, 4));
        const IntMatrix a = (t % 2 == 0) ? random_low_rank(rng, r, n, static_cast<std::size_t>(rand_int(rng, 1, 3)), 2)
                                         : random_matrix(rng, r, n, -3, 3);
        const auto basis = zlinalg::kernel_basis(a);
        const std::string tag = "kernel #" + std::to_string(t);
        c.expect(basis.size() + zlinalg::rank(a) == n, tag + ": rank-nullity");
        for (const auto& b : basis)
            c.expect(zlinalg::multiply(a, b) == IntVector(r, 0), tag + ": basis vector not in kernel");
        const IntMatrix bm = IntMatrix::from_columns(basis, n);

        IntVector x(n, -box);
        for (;;) {
            if (zlinalg::multiply(a, x) == IntVector(r, 0)) {
                const bool zero = std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
                const bool spanned = basis.empty() ? zero : zlinalg::solve_integer(bm, x).has_value();
                c.expect(spanned, tag + ": kernel vector " + zlinalg::to_string(x) + " not spanned");
            }
            std::size_t i = 0;
            while (i < n && x[i] == box)
                x[i++] = -box;
            if (i == n)
                break;
            ++x[i];
        }
    }
    return trials;
}

ribbon::RibbonSurface random_surface(std::mt19937_64& rng)
{
    const auto n = static_cast<std::size_t>(rand_int(rng, 1, 5));
    std::vector<std::size_t> feet;
    for (std::size_t b = 0; b < n; ++b) {
        feet.push_back(b);
        feet.push_back(b);
    }
    std::shuffle(feet.begin(), feet.end(), rng);
    IntVector twists(n);
    for (auto& t : twists)
        t = rand_int(rng, -3, 3);
    // Interleaving from the feet order, to fix crossing parities.
    std::vector<std::pair<std::size_t, std::size_t>> pos(n, {SIZE_MAX, 0});
    for (std::size_t p = 0; p < feet.size(); ++p) {
        auto& q = pos[feet[p]];
        (q.first == SIZE_MAX ? q.first : q.second) = p;
    }
    auto inter = [&](std::size_t i, std::size_t j) {
        auto [a, b] = pos[i];
        auto [x, y] = pos[j];
        return (a < x && x < b && b < y) || (x < a && a < y && y < b);
    };
    IntMatrix cr(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        cr(i, i) = rand_int(rng, -2, 2);
        for (std::size_t j = i + 1; j < n; ++j) {
            Int v = rand_int(rng, -3, 3);
            if ((v % 2 != 0) != inter(i, j))
                v += 1;
            cr(i, j) = cr(j, i) = v;
        }
    }
    return ribbon::RibbonSurface::build(n, feet, twists, cr);
}

std::size_t seifert_suite(std::mt19937_64& rng, Check& c)
{
    const std::size_t trials = 400;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto f = random_surface(rng);
        const IntMatrix v = seifert::seifert_matrix(f).V;
        const IntMatrix j = ribbon::intersection_form(f);
        const std::size_t n = f.band_count();
        IntMatrix diff(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                diff(a, b) = v(a, b) - v(b, a);
        c.expect(diff == j, "seifert #" + std::to_string(t) + ": V - V^T != J");
        c.expect(2 * f.genus() + static_cast<Int>(f.boundary_count()) == 2 - f.euler_characteristic(),
                 "seifert #" + std::to_string(t) + ": genus/boundary count");
    }
    return trials;
}

std::size_t transvection_suite(std::mt19937_64& rng, Check& c)
{
    const std::size_t trials = 400;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto f = random_surface(rng);
        ribbon::CurveClass g;
        g.coefficients.resize(f.band_count());
        for (auto& x : g.coefficients)
            x = rand_int(rng, -2, 2);
        const int sign = rand_int(rng, 0, 1) ? 1 : -1;
        const IntMatrix m = ribbon::dehn_twist_action(f, g, sign);
        const IntMatrix j = ribbon::intersection_form(f);
        c.expect(m.transpose() * j * m == j, "twist #" + std::to_string(t) + ": form not preserved");
        c.expect(ribbon::dehn_twist_action(f, g, -sign) * m == IntMatrix::identity(f.band_count()),
                 "twist #" + std::to_string(t) + ": inverse twist");
    }
    return trials;
}

engine::SGFactBase rebuild(const engine::SGFactBase& base, std::mt19937_64& rng, double keep)
{
    std::vector<engine::LegendrianDesc> knots = base.knots();
    std::vector<engine::SGFact> facts;
    std::bernoulli_distribution coin(keep);
    for (const auto& f : base.facts())
        if (keep >= 1.0 || coin(rng))
            facts.push_back(f);
    std::shuffle(knots.begin(), knots.end(), rng);
    std::shuffle(facts.begin(), facts.end(), rng);
    engine::SGFactBase out;
    for (auto& k : knots)
        out.add_knot(std::move(k));
    for (auto& f : facts)
        out.add_fact(std::move(f));
    return out;
}

std::size_t engine_suite(std::mt19937_64& rng, Check& c)
{
    std::size_t runs = 0;
    for (const char* name : {"thm13_facts", "thm14_facts", "thm15_facts"}) {
        const auto d = fixtures::load(name);
        const auto& base = d.facts.at(0).base;
        const auto full = engine::derive_bounds(base);
        const std::string tag = name;
        for (int t = 0; t < 12; ++t, ++runs) {
            const auto perm = engine::derive_bounds(rebuild(base, rng, 1.0));
            for (const auto& [k, iv] : full.intervals) {
                const auto& pv = perm.intervals.at(k);
                c.expect(pv.lo == iv.lo && pv.hi == iv.hi, tag + ": order changed the interval of " + k);
            }
        }
        for (int t = 0; t < 12; ++t, ++runs) {
            const auto sub = engine::derive_bounds(rebuild(base, rng, 0.7));
            for (const auto& [k, iv] : full.intervals) {
                const auto& sv = sub.intervals.at(k);
                const bool hi_ok = !sv.hi || (iv.hi && *iv.hi <= *sv.hi);
                c.expect(sv.lo <= iv.lo && hi_ok, tag + ": dropping facts narrowed the interval of " + k);
            }
        }
        for (const auto& f : base.facts())
            if (f.kind == engine::FactKind::OrientationMirror) {
                const auto& a = full.intervals.at(f.subject());
                const auto& b = full.intervals.at(f.other);
                c.expect(a.lo == b.lo && a.hi == b.hi, tag + ": mirror pair differs: " + f.subject());
            }
    }
    return runs;
}

CriterionResult properties()
{
    return guarded(9, "property suites", [](Check& c) {
        std::mt19937_64 rng(kSeed);
        std::ostringstream out;
        out << snf_suite(rng, c) << " SNF, ";
        out << kernel_suite(rng, c) << " kernel vs brute force, ";
        out << seifert_suite(rng, c) << " Seifert, ";
        out << transvection_suite(rng, c) << " transvection, ";
        out << engine_suite(rng, c) << " engine permutation/subset runs";
        return out.str();
    });
}

}  // namespace

std::vector<CriterionResult> run_acceptance()
{
    return {torus_tb(), twist_tb(), boundary_listing(), rotation(), base_rotations(),
            hf_bookkeeping(), rotation_list(), knot_families(), properties()};
}

std::string format_result(const CriterionResult& r)
{
    return std::string(r.passed ? "PASS" : "FAIL") + "  [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail;
}

}  // namespace sgtk::verify
