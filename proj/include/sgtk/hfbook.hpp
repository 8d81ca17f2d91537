/**
 * Bookkeeping for the Heegaard Floer non-planarity argument.
 *
 * Modules are recorded per Spin^c slot as a count of towers T+ = Z[U^-1] and
 * of finite Z summands on which U acts as zero. Nothing here computes Floer
 * homology; module data is fixture input.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "sgtk/zlinalg.hpp"

namespace sgtk::hfbook {

using zlinalg::Int;

struct SpincSlot {
    Int towers = 0;
    Int finite_z = 0;

    friend bool operator==(const SpincSlot&, const SpincSlot&) = default;
};

class FormalHFModule {
public:
    /// Throws InputError on an empty slot list or negative counts.
    explicit FormalHFModule(std::vector<SpincSlot> slots);

    std::size_t spinc_count() const { return slots_.size(); }
    const std::vector<SpincSlot>& slots() const { return slots_; }
    Int total_towers() const;

    friend bool operator==(const FormalHFModule&, const FormalHFModule&) = default;

private:
    std::vector<SpincSlot> slots_;
};

/// Contact invariants of a family of Stein fillable structures on one manifold.
struct ContactClassSet {
    Int class_count = 1;
    bool distinct = false;   // pairwise distinct primitive classes
    bool exclusion = false;  // no two classes in one tower-kernel summand

    friend bool operator==(const ContactClassSet&, const ContactClassSet&) = default;
};

/**
 * HF+ of +(n+1) surgery on the left-handed trefoil, n > 6:
 * slot 0 is T+ + Z, slots 1..n are T+. Throws PreconditionError for n <= 6.
 */
FormalHFModule hf_plus_surgery(Int n);

/// Rank of HF-hat per slot: each tower gives its U-kernel, each finite Z gives two generators.
std::vector<Int> hf_hat(const FormalHFModule& m);

Int hf_red_rank(const FormalHFModule& m);

/**
 * Number of contact classes forced outside every tower-kernel summand when
 * each summand can hold at most one class. Throws PreconditionError if the
 * distinctness or exclusion assumption is not asserted.
 */
Int pigeonhole_excess(const ContactClassSet& classes, const FormalHFModule& m);

/// Excess >= 1 and HF_red != 0: some contact class survives in HF_red, so that
/// structure has no planar open book.
bool forces_nonplanar(const ContactClassSet& classes, const FormalHFModule& m);

/// rot(L_i) = 2i - n - 3 for the n + 2 right-handed trefoils with tb = -n.
std::vector<Int> trefoil_rotation_list(Int n);

}  // namespace sgtk::hfbook
