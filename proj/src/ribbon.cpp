#include "sgtk/ribbon.hpp"

#include <algorithm>
#include <string>

#include "sgtk/error.hpp"

namespace sgtk::ribbon {

namespace checked = zlinalg::checked;

namespace {

std::string band_label(std::size_t b)
{
    return "band " + std::to_string(b + 1);
}

// Boundary components are the cycles of p -> tau(p + 1), where tau swaps the
// two feet of each band (orientation-preserving attachment).
std::size_t count_boundary(const std::vector<std::size_t>& feet,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pos)
{
    const std::size_t len = feet.size();
    if (len == 0)
        return 1;
    auto partner = [&](std::size_t p) {
        const auto& [a, b] = pos[feet[p]];
        return p == a ? b : a;
    };
    std::vector<bool> seen(len, false);
    std::size_t cycles = 0;
    for (std::size_t s = 0; s < len; ++s) {
        if (seen[s])
            continue;
        ++cycles;
        std::size_t p = s;
        while (!seen[p]) {
            seen[p] = true;
            p = partner((p + 1) % len);
        }
    }
    return cycles;
}

}  // namespace

RibbonSurface RibbonSurface::build(std::size_t band_count, std::vector<std::size_t> feet_order,
                                   IntVector twists, IntMatrix crossings,
                                   std::vector<bool> orientation_preserving)
{
    const std::size_t n = band_count;
    if (feet_order.size() != 2 * n)
        throw InputError("feet_order has " + std::to_string(feet_order.size()) + " entries, expected " +
                         std::to_string(2 * n));
    if (twists.size() != n)
        throw InputError("twists has " + std::to_string(twists.size()) + " entries, expected " +
                         std::to_string(n));
    if (crossings.rows() == 0 && crossings.cols() == 0)
        crossings = IntMatrix(n, n);
    if (crossings.rows() != n || crossings.cols() != n)
        throw InputError("crossings must be a " + std::to_string(n) + "x" + std::to_string(n) + " table");
    if (orientation_preserving.empty())
        orientation_preserving.assign(n, true);
    if (orientation_preserving.size() != n)
        throw InputError("orientation flags must be given for every band");
    for (std::size_t b = 0; b < n; ++b)
        if (!orientation_preserving[b])
            throw InputError("non-orientable attachment of " + band_label(b) +
                             ": only orientable pages are supported");

    std::vector<std::pair<std::size_t, std::size_t>> pos(n, {2 * n, 2 * n});
    std::vector<int> seen(n, 0);
    for (std::size_t p = 0; p < feet_order.size(); ++p) {
        const std::size_t b = feet_order[p];
        if (b >= n)
            throw InputError("feet_order references unknown " + band_label(b));
        if (seen[b] == 0)
            pos[b].first = p;
        else
            pos[b].second = p;
        ++seen[b];
    }
    for (std::size_t b = 0; b < n; ++b)
        if (seen[b] != 2)
            throw InputError(band_label(b) + " appears " + std::to_string(seen[b]) +
                             " times in feet_order, expected 2");

    RibbonSurface f;
    f.band_count_ = n;
    f.feet_ = std::move(feet_order);
    f.twists_ = std::move(twists);
    f.crossings_ = std::move(crossings);
    f.orientation_ = std::move(orientation_preserving);
    f.feet_pos_ = std::move(pos);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (f.crossings_(i, j) != f.crossings_(j, i))
                throw InputError("crossing table is not symmetric at " + band_label(i) + ", " + band_label(j));
            const bool odd = (f.crossings_(i, j) % 2) != 0;
            if (odd != f.interleaved(i, j))
                throw InputError(band_label(i) + " and " + band_label(j) + " have " +
                                 std::to_string(f.crossings_(i, j)) + " crossings; feet that " +
                                 (f.interleaved(i, j) ? "interleave need an odd count"
                                                      : "do not interleave need an even count"));
        }

    f.boundary_count_ = count_boundary(f.feet_, f.feet_pos_);
    const Int twice_genus = 2 - f.euler_characteristic() - static_cast<Int>(f.boundary_count_);
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw InputError("inconsistent band data: 2g = " + std::to_string(twice_genus));
    f.genus_ = twice_genus / 2;
    return f;
}

RibbonSurface RibbonSurface::disk()
{
    return build(0, {}, {}, IntMatrix());
}

bool RibbonSurface::interleaved(std::size_t i, std::size_t j) const
{
    if (i == j)
        return false;
    const auto [pi, qi] = feet_pos_[i];
    const auto [pj, qj] = feet_pos_[j];
    return (pi < pj && pj < qi && qi < qj) || (pj < pi && pi < qj && qj < qi);
}

IntVector abelianize(const TraversalWord& word, std::size_t band_count)
{
    IntVector c(band_count, 0);
    for (const auto& pass : word) {
        if (pass.band >= band_count)
            throw InputError("traversal passes over unknown " + band_label(pass.band));
        if (pass.sign != 1 && pass.sign != -1)
            throw InputError("traversal sign must be +1 or -1");
        c[pass.band] = checked::add(c[pass.band], pass.sign);
    }
    return c;
}

CurveClass CurveClass::from_word(std::size_t band_count, TraversalWord word)
{
    CurveClass c;
    c.coefficients = abelianize(word, band_count);
    c.traversal = std::move(word);
    return c;
}

void CurveClass::check_on(const RibbonSurface& f) const
{
    if (coefficients.size() != f.band_count())
        throw InputError("curve has " + std::to_string(coefficients.size()) + " coefficients but the page has " +
                         std::to_string(f.band_count()) + " bands");
    if (traversal && abelianize(*traversal, f.band_count()) != coefficients)
        throw InputError("traversal word does not abelianize to the stated homology class " +
                         zlinalg::to_string(coefficients));
}

bool CurveClass::is_zero() const
{
    return std::all_of(coefficients.begin(), coefficients.end(), [](Int x) { return x == 0; });
}

void OpenBook::validate() const
{
    for (std::size_t k = 0; k < monodromy.size(); ++k) {
        monodromy[k].curve.check_on(page);
        if (monodromy[k].sign != 1 && monodromy[k].sign != -1)
            throw InputError("monodromy twist " + std::to_string(k + 1) + " has sign " +
                             std::to_string(monodromy[k].sign) + ", expected +1 or -1");
    }
}

bool OpenBook::all_twists_positive() const
{
    return std::all_of(monodromy.begin(), monodromy.end(), [](const DehnTwist& t) { return t.sign == 1; });
}

IntMatrix intersection_form(const RibbonSurface& f)
{
    const std::size_t n = f.band_count();
    IntMatrix j(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto [pa, qa] = f.foot_positions(a);
            const auto [pb, qb] = f.foot_positions(b);
            if (pa < pb && pb < qa && qa < qb)
                j(a, b) = 1;
            else if (pb < pa && pa < qb && qb < qa)
                j(a, b) = -1;
        }
    return j;
}

Int intersection(const RibbonSurface& f, std::span<const Int> x, std::span<const Int> y)
{
    return zlinalg::dot(x, zlinalg::multiply(intersection_form(f), y));
}

IntMatrix dehn_twist_action(const RibbonSurface& f, const CurveClass& g, int sign)
{
    g.check_on(f);
    if (sign != 1 && sign != -1)
        throw InputError("Dehn twist sign must be +1 or -1");
    const std::size_t n = f.band_count();
    // <x, g> = (J g) . x
    const IntVector jg = zlinalg::multiply(intersection_form(f), g.coefficients);
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m(a, b) = checked::add(m(a, b), checked::mul(sign, checked::mul(g.coefficients[a], jg[b])));
    return m;
}

IntMatrix monodromy_action(const OpenBook& ob)
{
    IntMatrix m = IntMatrix::identity(ob.page.band_count());
    for (const auto& t : ob.monodromy)
        m = dehn_twist_action(ob.page, t.curve, t.sign) * m;
    return m;
}

CurveClass extend_by_zero(const CurveClass& c, std::size_t new_band_count)
{
    if (new_band_count < c.coefficients.size())
        throw InputError("cannot shrink a curve class");
    CurveClass out = c;
    out.coefficients.resize(new_band_count, 0);
    return out;
}

OpenBook stabilize(const OpenBook& ob, const ArcSpec& arc)
{
    const RibbonSurface& old = ob.page;
    const std::size_t n = old.band_count();
    const std::size_t len = 2 * n + 2;
    if (!(arc.first < arc.second && arc.second < len))
        throw InputError("stabilization feet positions must satisfy first < second < " + std::to_string(len));

    std::vector<std::size_t> feet;
    feet.reserve(len);
    std::size_t src = 0;
    for (std::size_t p = 0; p < len; ++p) {
        if (p == arc.first || p == arc.second)
            feet.push_back(n);
        else
            feet.push_back(old.feet_order()[src++]);
    }

    IntVector twists = old.twists();
    twists.push_back(-1);

    IntMatrix crossings(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            crossings(i, j) = old.crossings()(i, j);

    // Interleaving of the new band with old band i, read off the new feet order.
    auto new_interleaves = [&](std::size_t i) {
        std::size_t inside = 0;
        for (std::size_t p = arc.first + 1; p < arc.second; ++p)
            if (feet[p] == i)
                ++inside;
        return inside == 1;
    };
    if (arc.crossings && arc.crossings->size() != n)
        throw InputError("stabilization crossing list must have one entry per existing band");
    for (std::size_t i = 0; i < n; ++i) {
        const Int c = arc.crossings ? (*arc.crossings)[i] : (new_interleaves(i) ? 1 : 0);
        crossings(i, n) = c;
        crossings(n, i) = c;
    }

    OpenBook out{RibbonSurface::build(n + 1, std::move(feet), std::move(twists), std::move(crossings)), {}};
    for (const auto& t : ob.monodromy)
        out.monodromy.push_back({extend_by_zero(t.curve, n + 1), t.sign});
    CurveClass core;
    core.coefficients.assign(n + 1, 0);
    core.coefficients[n] = 1;
    core.traversal = TraversalWord{{n, 1}};
    out.monodromy.push_back({core, 1});
    return out;
}

bool is_nonseparating(const RibbonSurface& f, const CurveClass& k)
{
    k.check_on(f);
    return !k.is_zero();
}

}  // namespace sgtk::ribbon
