/**
 * Rotation numbers of page curves from the Stein handle chain complex.
 *
 * The planar page is a disk with p one-handles X_1..X_p. Every monodromy curve
 * and the surgery knot K become 2-handles. The cellular boundary d_2 sends a
 * 2-handle core to its signed run count over the 1-handles, H_2 of the
 * surgered 4-manifold is ker d_2, and c_1 of the Stein structure is dual to
 * sum r_i C_i over the cocores, r_i being the rotation number of curve i in
 * the identity-monodromy open book. rot(K) is <c_1, h> for the generator h of
 * H_2 normalized to +1 on K.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgtk/zlinalg.hpp"

namespace sgtk::stein {

using zlinalg::Int;
using zlinalg::IntMatrix;
using zlinalg::IntVector;

/// One signed run of a curve over a 1-handle.
struct HandleRun {
    std::size_t handle = 0;
    int sign = 1;

    friend bool operator==(const HandleRun&, const HandleRun&) = default;
};

using HandleWord = std::vector<HandleRun>;

struct TwoHandleCurve {
    std::string name;
    IntVector traversal;                 // signed run count per 1-handle
    std::optional<Int> base_rotation;    // explicit value wins over the word
    std::optional<HandleWord> word;      // cyclic run sequence
    int sign = 1;                        // twist sign; must be +1

    friend bool operator==(const TwoHandleCurve&, const TwoHandleCurve&) = default;
};

struct SteinProblem {
    std::vector<std::string> one_handles;
    std::vector<TwoHandleCurve> curves;
    std::size_t distinguished = 0;

    /// Throws InputError/PreconditionError when an invariant fails.
    void validate() const;

    friend bool operator==(const SteinProblem&, const SteinProblem&) = default;
};

/// Rule computing a base rotation number from a cyclic handle word.
using RotationConvention = std::function<Int(const HandleWord&)>;

/**
 * Default rule: minus half the number of sign changes around the cyclic word.
 * A curve running straight over handles in one direction has rotation 0; each
 * reversal of direction turns the tangent by half a revolution clockwise.
 * This is calibrated against planar pages built by positive stabilization of
 * the disk, not derived for arbitrary diagrams.
 */
Int alternation_convention(const HandleWord& word);

/// Throws PreconditionError when no word is available.
Int base_rotation_planar(const std::optional<HandleWord>& word,
                         const RotationConvention& convention = alternation_convention);

/// p x (#curves) matrix whose columns are the traversal vectors.
IntMatrix boundary_matrix(const SteinProblem& problem);

/// Base rotation numbers in curve order: explicit values, else the convention.
IntVector c1_cochain(const SteinProblem& problem,
                     const RotationConvention& convention = alternation_convention);

struct KernelPairing {
    IntVector vector;
    Int pairing = 0;
};

struct RotationResult {
    std::optional<Int> rot;              // empty when ambiguous
    std::optional<IntVector> h;          // kernel vector with +1 on the distinguished curve
    IntVector c1_cochain;
    std::size_t kernel_rank = 0;
    std::vector<KernelPairing> basis_pairings;  // Hermite-reduced kernel basis with <c1, v>
    bool ambiguous = false;
};

/**
 * Evaluate c_1 on the H_2 generator through the distinguished curve.
 *
 * Throws PreconditionError when no kernel vector has coefficient +-1 on the
 * distinguished curve. When the kernel has rank > 1 and c_1 does not vanish on
 * the kernel vectors avoiding the distinguished curve, the answer depends on
 * the choice of h: the result is flagged ambiguous and rot/h are left empty.
 */
RotationResult rotation_number(const SteinProblem& problem,
                               const RotationConvention& convention = alternation_convention);

}  // namespace sgtk::stein
