/**
 * Open-book pages as a disk with attached bands.
 *
 * A page with n bands is described by the cyclic order of the 2n band feet
 * around the disk boundary, a full-twist count per band, and a symmetric
 * table of signed band crossings in a planar projection (the diagonal holds
 * each band's self-crossing writhe). H_1 of the page has the basis a_1..a_n,
 * a_i being the core of band i closed up through the disk.
 *
 * Conventions used everywhere downstream:
 *  - feet_order is read counterclockwise. Band i has first foot at list
 *    position p_i and second foot at q_i > p_i; its core runs out of foot p_i
 *    along the band into foot q_i and back across the disk.
 *  - <a_i, a_j> = +1 if p_i < p_j < q_i < q_j, -1 if p_j < p_i < q_j < q_i,
 *    and 0 when the feet do not interleave.
 *  - A right-handed (sign +1) Dehn twist about g acts on H_1 by
 *    x -> x + <x, g> g.
 *
 * Bands are indexed from 0 in code. The input file labels them from 1.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sgtk/zlinalg.hpp"

namespace sgtk::ribbon {

using zlinalg::Int;
using zlinalg::IntMatrix;
using zlinalg::IntVector;

class RibbonSurface {
public:
    /**
     * Validate and build a page.
     *
     * crossings must be n x n and symmetric; interleaved band pairs must cross
     * an odd number of times and non-interleaved pairs an even number of times
     * (a planar projection of chords leaving a disk forces this parity).
     * Throws InputError on malformed feet, non-orientable bands, or bad crossings.
     */
    static RibbonSurface build(std::size_t band_count, std::vector<std::size_t> feet_order,
                               IntVector twists, IntMatrix crossings,
                               std::vector<bool> orientation_preserving = {});

    /// The disk: no bands.
    static RibbonSurface disk();

    std::size_t band_count() const { return band_count_; }
    const std::vector<std::size_t>& feet_order() const { return feet_; }
    const IntVector& twists() const { return twists_; }
    const IntMatrix& crossings() const { return crossings_; }
    const std::vector<bool>& orientation_preserving() const { return orientation_; }

    Int euler_characteristic() const { return 1 - static_cast<Int>(band_count_); }
    std::size_t boundary_count() const { return boundary_count_; }
    Int genus() const { return genus_; }

    /// List positions (first, second) of band b's feet.
    std::pair<std::size_t, std::size_t> foot_positions(std::size_t band) const { return feet_pos_[band]; }
    bool interleaved(std::size_t i, std::size_t j) const;

    friend bool operator==(const RibbonSurface&, const RibbonSurface&) = default;

private:
    RibbonSurface() = default;

    std::size_t band_count_ = 0;
    std::vector<std::size_t> feet_;
    IntVector twists_;
    IntMatrix crossings_;
    std::vector<bool> orientation_;
    std::vector<std::pair<std::size_t, std::size_t>> feet_pos_;
    std::size_t boundary_count_ = 1;
    Int genus_ = 0;
};

/// One signed pass over a band; sign +1 runs from the first foot to the second.
struct BandPass {
    std::size_t band = 0;
    int sign = 1;

    friend bool operator==(const BandPass&, const BandPass&) = default;
};

using TraversalWord = std::vector<BandPass>;

/**
 * Homology class of a curve on a page, with an optional cyclic traversal word
 * realizing it. The class is what every computation uses.
 */
struct CurveClass {
    IntVector coefficients;
    std::optional<TraversalWord> traversal;

    static CurveClass from_word(std::size_t band_count, TraversalWord word);

    /// Throws InputError unless the curve fits on F and its word abelianizes to it.
    void check_on(const RibbonSurface& f) const;

    bool is_zero() const;
    friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

IntVector abelianize(const TraversalWord& word, std::size_t band_count);

struct DehnTwist {
    CurveClass curve;
    int sign = 1;  // +1 right-handed

    friend bool operator==(const DehnTwist&, const DehnTwist&) = default;
};

struct OpenBook {
    RibbonSurface page;
    std::vector<DehnTwist> monodromy;

    /// Throws InputError if a twist curve does not live on the page or a sign is not +-1.
    void validate() const;
    bool all_twists_positive() const;
};

/// Skew-symmetric algebraic intersection matrix on the band-core basis.
IntMatrix intersection_form(const RibbonSurface& f);

/// Intersection number <x, y>.
Int intersection(const RibbonSurface& f, std::span<const Int> x, std::span<const Int> y);

/// Matrix of x -> x + sign <x, g> g on H_1.
IntMatrix dehn_twist_action(const RibbonSurface& f, const CurveClass& g, int sign);

/// Action of the whole monodromy word; the first twist is applied first.
IntMatrix monodromy_action(const OpenBook& ob);

/**
 * Where a positive stabilization inserts its new band. Positions index the
 * new feet sequence (length 2n + 2), first < second. crossings[i] is the
 * signed crossing count of the new band with old band i; when omitted, the
 * smallest count with the right parity is used (1 for interleaved, 0 otherwise).
 */
struct ArcSpec {
    std::size_t first = 0;
    std::size_t second = 1;
    std::optional<IntVector> crossings;
};

/**
 * Plumb a positive Hopf band: the new band carries one negative full twist
 * (page framing -1) and the monodromy gains a right-handed twist about its core.
 * Existing curves embed by appending a zero coefficient.
 */
OpenBook stabilize(const OpenBook& ob, const ArcSpec& arc);

CurveClass extend_by_zero(const CurveClass& c, std::size_t new_band_count);

bool is_nonseparating(const RibbonSurface& f, const CurveClass& k);

}  // namespace sgtk::ribbon
