#include "sgtk/hfbook.hpp"

#include <algorithm>
#include <string>

#include "sgtk/error.hpp"

namespace sgtk::hfbook {

namespace checked = zlinalg::checked;

FormalHFModule::FormalHFModule(std::vector<SpincSlot> slots) : slots_(std::move(slots))
{
    if (slots_.empty())
        throw InputError("an HF module needs at least one Spin^c slot");
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].towers < 0 || slots_[i].finite_z < 0)
            throw InputError("Spin^c slot " + std::to_string(i) + " has a negative summand count");
}

Int FormalHFModule::total_towers() const
{
    Int t = 0;
    for (const auto& s : slots_)
        t = checked::add(t, s.towers);
    return t;
}

FormalHFModule hf_plus_surgery(Int n)
{
    if (n <= 6)
        throw PreconditionError("HF+ of the +(n+1) surgery is tabulated for n > 6 only, got n = " +
                                std::to_string(n));
    std::vector<SpincSlot> slots(static_cast<std::size_t>(n) + 1, SpincSlot{1, 0});
    slots[0].finite_z = 1;
    return FormalHFModule(std::move(slots));
}

std::vector<Int> hf_hat(const FormalHFModule& m)
{
    std::vector<Int> ranks;
    ranks.reserve(m.spinc_count());
    for (const auto& s : m.slots())
        ranks.push_back(checked::add(s.towers, checked::mul(2, s.finite_z)));
    return ranks;
}

Int hf_red_rank(const FormalHFModule& m)
{
    Int r = 0;
    for (const auto& s : m.slots())
        r = checked::add(r, s.finite_z);
    return r;
}

Int pigeonhole_excess(const ContactClassSet& classes, const FormalHFModule& m)
{
    if (!classes.distinct || !classes.exclusion)
        throw PreconditionError(
            "pigeonhole needs both assumptions asserted: distinct primitive contact classes and "
            "at most one class per tower-kernel summand");
    if (classes.class_count < 1)
        throw InputError("a contact class set needs at least one class");
    return std::max<Int>(0, checked::sub(classes.class_count, m.total_towers()));
}

bool forces_nonplanar(const ContactClassSet& classes, const FormalHFModule& m)
{
    return pigeonhole_excess(classes, m) > 0 && hf_red_rank(m) > 0;
}

std::vector<Int> trefoil_rotation_list(Int n)
{
    if (n < 1)
        throw PreconditionError("trefoil rotation list needs n >= 1");
    std::vector<Int> rots;
    for (Int i = 1; i <= n + 2; ++i)
        rots.push_back(2 * i - n - 3);
    return rots;
}

}  // namespace sgtk::hfbook
