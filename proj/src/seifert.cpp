#include "sgtk/seifert.hpp"

namespace sgtk::seifert {

namespace checked = zlinalg::checked;

SeifertMatrix seifert_matrix(const ribbon::RibbonSurface& f)
{
    const std::size_t n = f.band_count();
    const IntMatrix j = ribbon::intersection_form(f);
    const IntMatrix& c = f.crossings();
    IntMatrix v(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            v(a, b) = a == b ? checked::add(f.twists()[a], c(a, a)) : checked::add(c(a, b), j(a, b)) / 2;
    return {v};
}

Int self_linking(const SeifertMatrix& s, std::span<const Int> k)
{
    return zlinalg::dot(k, zlinalg::multiply(s.V, k));
}

Int page_framing_self_linking(const ribbon::RibbonSurface& f, const ribbon::CurveClass& k)
{
    k.check_on(f);
    return self_linking(seifert_matrix(f), k.coefficients);
}

}  // namespace sgtk::seifert
