#include "sgtk/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "sgtk/seifert.hpp"

namespace sgtk::doc {

using json = nlohmann::json;
using zlinalg::IntMatrix;
using zlinalg::IntVector;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw ParseError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    if (!j.is_object())
        fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            fail(path, "unknown key '" + it.key() + "'");
}

const json& require(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key))
        fail(path, std::string("missing required key '") + key + "'");
    return j.at(key);
}

Int as_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer())
        fail(path, "expected an integer");
    return v.get<Int>();
}

std::string as_string(const json& v, const std::string& path)
{
    if (!v.is_string())
        fail(path, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path)
{
    if (!v.is_boolean())
        fail(path, "expected true or false");
    return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path)
{
    if (!v.is_array())
        fail(path, "expected a list");
    return v;
}

IntVector as_int_vector(const json& v, const std::string& path)
{
    IntVector out;
    const json& a = as_array(v, path);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(as_int(a[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string item_path(const std::string& section, std::size_t i)
{
    return section + "[" + std::to_string(i) + "]";
}

// Signed 1-based label -> (index, sign).
std::pair<std::size_t, int> signed_label(Int v, std::size_t limit, const std::string& path, const char* what)
{
    const Int a = v < 0 ? -v : v;
    if (a < 1 || static_cast<std::size_t>(a) > limit)
        fail(path, std::string("unknown ") + what + " " + std::to_string(v) + " (labels run from 1 to " +
                       std::to_string(limit) + ", negative for reverse passes)");
    return {static_cast<std::size_t>(a - 1), v < 0 ? -1 : 1};
}

template <class T>
void check_unique(const std::vector<T>& items, const std::string& name, const std::string& section)
{
    for (const auto& it : items)
        if (it.name == name)
            fail(section, "duplicate name '" + name + "'");
}

template <class T>
const T& lookup(const std::vector<T>& items, const std::string& name, const char* what)
{
    for (const auto& it : items)
        if (it.name == name)
            return it;
    throw ParseError(std::string("no ") + what + " named '" + name + "'");
}

template <class T>
bool contains(const std::vector<T>& items, const std::string& name)
{
    return std::any_of(items.begin(), items.end(), [&](const T& t) { return t.name == name; });
}

const json* section(const json& root, const char* key)
{
    if (!root.contains(key))
        return nullptr;
    const json& s = root.at(key);
    if (!s.is_array())
        fail(key, "section must be a list of records");
    return &s;
}

void parse_surfaces(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "surfaces");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("surfaces", i);
        check_keys(r, path, {"name", "bands", "feet", "twists", "crossings", "orientation_preserving"});
        const std::string name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.surfaces, name, path);
        const Int bands = as_int(require(r, "bands", path), path + ".bands");
        if (bands < 0)
            fail(path + ".bands", "band count must be nonnegative");
        const auto n = static_cast<std::size_t>(bands);

        std::vector<std::size_t> feet;
        const IntVector raw_feet = as_int_vector(require(r, "feet", path), path + ".feet");
        for (std::size_t p = 0; p < raw_feet.size(); ++p) {
            if (raw_feet[p] < 1 || static_cast<std::size_t>(raw_feet[p]) > n)
                fail(path + ".feet[" + std::to_string(p) + "]", "band label out of range 1.." + std::to_string(n));
            feet.push_back(static_cast<std::size_t>(raw_feet[p] - 1));
        }
        IntVector twists = r.contains("twists") ? as_int_vector(r.at("twists"), path + ".twists") : IntVector(n, 0);

        IntMatrix crossings(n, n);
        if (r.contains("crossings")) {
            const json& cs = as_array(r.at("crossings"), path + ".crossings");
            for (std::size_t c = 0; c < cs.size(); ++c) {
                const std::string cp = path + ".crossings[" + std::to_string(c) + "]";
                const IntVector t = as_int_vector(cs[c], cp);
                if (t.size() != 3)
                    fail(cp, "expected [band, band, count]");
                const auto [a, sa] = signed_label(t[0], n, cp, "band");
                const auto [b, sb] = signed_label(t[1], n, cp, "band");
                if (sa < 0 || sb < 0)
                    fail(cp, "band labels must be positive");
                if (crossings(a, b) != 0)
                    fail(cp, "pair listed twice");
                crossings(a, b) = t[2];
                crossings(b, a) = t[2];
            }
        }
        std::vector<bool> orientation;
        if (r.contains("orientation_preserving")) {
            const json& os = as_array(r.at("orientation_preserving"), path + ".orientation_preserving");
            for (std::size_t b = 0; b < os.size(); ++b)
                orientation.push_back(as_bool(os[b], path + ".orientation_preserving[" + std::to_string(b) + "]"));
        }
        try {
            doc.surfaces.push_back({name, ribbon::RibbonSurface::build(n, std::move(feet), std::move(twists),
                                                                       std::move(crossings), std::move(orientation))});
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
}

void parse_curves(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "curves");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("curves", i);
        check_keys(r, path, {"name", "surface", "coefficients", "traversal"});
        const std::string name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.curves, name, path);
        const std::string surf = as_string(require(r, "surface", path), path + ".surface");
        if (!contains(doc.surfaces, surf))
            fail(path + ".surface", "dangling reference to surface '" + surf + "'");
        const auto& f = doc.surface(surf).surface;

        ribbon::CurveClass c;
        if (r.contains("traversal")) {
            ribbon::TraversalWord word;
            const IntVector t = as_int_vector(r.at("traversal"), path + ".traversal");
            for (Int v : t) {
                const auto [band, sign] = signed_label(v, f.band_count(), path + ".traversal", "band");
                word.push_back({band, sign});
            }
            c.traversal = std::move(word);
        }
        if (r.contains("coefficients"))
            c.coefficients = as_int_vector(r.at("coefficients"), path + ".coefficients");
        else if (c.traversal)
            c.coefficients = ribbon::abelianize(*c.traversal, f.band_count());
        else
            fail(path, "a curve needs coefficients or a traversal");
        try {
            c.check_on(f);
        } catch (const InputError& e) {
            fail(path, e.what());
        }
        doc.curves.push_back({name, surf, std::move(c)});
    }
}

void parse_open_books(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "open_books");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("open_books", i);
        check_keys(r, path, {"name", "page", "monodromy"});
        NamedOpenBook ob;
        ob.name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.open_books, ob.name, path);
        ob.page = as_string(require(r, "page", path), path + ".page");
        if (!contains(doc.surfaces, ob.page))
            fail(path + ".page", "dangling reference to surface '" + ob.page + "'");
        const json& mono = as_array(require(r, "monodromy", path), path + ".monodromy");
        for (std::size_t k = 0; k < mono.size(); ++k) {
            const std::string tp = path + ".monodromy[" + std::to_string(k) + "]";
            check_keys(mono[k], tp, {"curve", "sign"});
            NamedTwist t;
            t.curve = as_string(require(mono[k], "curve", tp), tp + ".curve");
            if (!contains(doc.curves, t.curve))
                fail(tp + ".curve", "dangling reference to curve '" + t.curve + "'");
            if (doc.curve(t.curve).surface != ob.page)
                fail(tp + ".curve", "curve '" + t.curve + "' does not live on page '" + ob.page + "'");
            t.sign = mono[k].contains("sign") ? static_cast<int>(as_int(mono[k].at("sign"), tp + ".sign")) : 1;
            if (t.sign != 1 && t.sign != -1)
                fail(tp + ".sign", "twist sign must be 1 or -1");
            ob.monodromy.push_back(std::move(t));
        }
        doc.open_books.push_back(std::move(ob));
    }
}

void parse_stein(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "stein_problems");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("stein_problems", i);
        check_keys(r, path, {"name", "one_handles", "curves", "distinguished", "open_book"});
        NamedSteinProblem sp;
        sp.name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.stein_problems, sp.name, path);
        const json& handles = as_array(require(r, "one_handles", path), path + ".one_handles");
        for (std::size_t h = 0; h < handles.size(); ++h)
            sp.problem.one_handles.push_back(as_string(handles[h], path + ".one_handles[" + std::to_string(h) + "]"));
        const std::size_t p = sp.problem.one_handles.size();

        const json& curves = as_array(require(r, "curves", path), path + ".curves");
        for (std::size_t c = 0; c < curves.size(); ++c) {
            const std::string cp = path + ".curves[" + std::to_string(c) + "]";
            check_keys(curves[c], cp, {"name", "traversal", "word", "rotation", "sign"});
            stein::TwoHandleCurve curve;
            curve.name = as_string(require(curves[c], "name", cp), cp + ".name");
            for (const auto& other : sp.problem.curves)
                if (other.name == curve.name)
                    fail(cp + ".name", "duplicate curve name '" + curve.name + "'");
            if (curves[c].contains("word")) {
                stein::HandleWord word;
                for (Int v : as_int_vector(curves[c].at("word"), cp + ".word")) {
                    const auto [h, s] = signed_label(v, p, cp + ".word", "one-handle");
                    word.push_back({h, s});
                }
                curve.word = std::move(word);
            }
            if (curves[c].contains("traversal")) {
                curve.traversal = as_int_vector(curves[c].at("traversal"), cp + ".traversal");
            } else if (curve.word) {
                curve.traversal.assign(p, 0);
                for (const auto& run : *curve.word)
                    curve.traversal[run.handle] += run.sign;
            } else {
                fail(cp, "a 2-handle curve needs a traversal vector or a word");
            }
            if (curves[c].contains("rotation"))
                curve.base_rotation = as_int(curves[c].at("rotation"), cp + ".rotation");
            if (curves[c].contains("sign"))
                curve.sign = static_cast<int>(as_int(curves[c].at("sign"), cp + ".sign"));
            sp.problem.curves.push_back(std::move(curve));
        }

        const std::string dist = as_string(require(r, "distinguished", path), path + ".distinguished");
        auto it = std::find_if(sp.problem.curves.begin(), sp.problem.curves.end(),
                               [&](const stein::TwoHandleCurve& c) { return c.name == dist; });
        if (it == sp.problem.curves.end())
            fail(path + ".distinguished", "dangling reference to curve '" + dist + "'");
        sp.problem.distinguished = static_cast<std::size_t>(it - sp.problem.curves.begin());

        try {
            sp.problem.validate();
        } catch (const std::runtime_error& e) {
            fail(path, e.what());
        }

        if (r.contains("open_book")) {
            const std::string obn = as_string(r.at("open_book"), path + ".open_book");
            if (!contains(doc.open_books, obn))
                fail(path + ".open_book", "dangling reference to open book '" + obn + "'");
            // The monodromy curves must be the non-distinguished 2-handles, in order.
            const auto& ob = doc.open_book(obn);
            const auto& page = doc.surface(ob.page).surface;
            if (page.band_count() != p)
                fail(path + ".open_book", "page has " + std::to_string(page.band_count()) + " bands but the problem has " +
                                              std::to_string(p) + " one-handles");
            std::vector<IntVector> twist_classes;
            for (const auto& t : ob.monodromy) {
                if (t.sign != 1)
                    fail(path + ".open_book", "monodromy of '" + obn + "' has a negative twist");
                twist_classes.push_back(doc.curve(t.curve).curve.coefficients);
            }
            std::vector<IntVector> handles_classes;
            for (std::size_t c = 0; c < sp.problem.curves.size(); ++c)
                if (c != sp.problem.distinguished)
                    handles_classes.push_back(sp.problem.curves[c].traversal);
            if (twist_classes != handles_classes)
                fail(path + ".open_book", "2-handle curves do not match the monodromy word of '" + obn + "'");
            sp.open_book = obn;
        }
        doc.stein_problems.push_back(std::move(sp));
    }
}

void parse_hf(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "hf_modules");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("hf_modules", i);
        check_keys(r, path, {"name", "surgery_n", "slots", "contact_classes"});
        const std::string name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.hf_modules, name, path);
        if (r.contains("surgery_n") == r.contains("slots"))
            fail(path, "give exactly one of 'surgery_n' or 'slots'");
        std::optional<Int> n;
        std::optional<hfbook::FormalHFModule> module;
        try {
            if (r.contains("surgery_n")) {
                n = as_int(r.at("surgery_n"), path + ".surgery_n");
                module = hfbook::hf_plus_surgery(*n);
            } else {
                std::vector<hfbook::SpincSlot> slots;
                const json& ss = as_array(r.at("slots"), path + ".slots");
                for (std::size_t s = 0; s < ss.size(); ++s) {
                    const std::string sp = path + ".slots[" + std::to_string(s) + "]";
                    check_keys(ss[s], sp, {"towers", "finite_z"});
                    slots.push_back({as_int(require(ss[s], "towers", sp), sp + ".towers"),
                                     as_int(require(ss[s], "finite_z", sp), sp + ".finite_z")});
                }
                module = hfbook::FormalHFModule(std::move(slots));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::runtime_error& e) {
            fail(path, e.what());
        }
        std::optional<hfbook::ContactClassSet> classes;
        if (r.contains("contact_classes")) {
            const json& cc = r.at("contact_classes");
            const std::string cp = path + ".contact_classes";
            check_keys(cc, cp, {"count", "distinct", "exclusion"});
            hfbook::ContactClassSet set;
            set.class_count = as_int(require(cc, "count", cp), cp + ".count");
            if (set.class_count < 1)
                fail(cp + ".count", "need at least one contact class");
            set.distinct = cc.contains("distinct") && as_bool(cc.at("distinct"), cp + ".distinct");
            set.exclusion = cc.contains("exclusion") && as_bool(cc.at("exclusion"), cp + ".exclusion");
            classes = set;
        }
        doc.hf_modules.push_back({name, n, std::move(*module), classes});
    }
}

void parse_matrices(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "matrices");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("matrices", i);
        check_keys(r, path, {"name", "rows", "cols"});
        const std::string name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.matrices, name, path);
        const json& rows = as_array(require(r, "rows", path), path + ".rows");
        std::vector<IntVector> data;
        for (std::size_t k = 0; k < rows.size(); ++k)
            data.push_back(as_int_vector(rows[k], path + ".rows[" + std::to_string(k) + "]"));
        std::size_t cols = data.empty() ? 0 : data.front().size();
        if (r.contains("cols")) {
            const Int c = as_int(r.at("cols"), path + ".cols");
            if (c < 0)
                fail(path + ".cols", "column count must be nonnegative");
            cols = static_cast<std::size_t>(c);
        }
        for (std::size_t k = 0; k < data.size(); ++k)
            if (data[k].size() != cols)
                fail(path + ".rows[" + std::to_string(k) + "]", "row length differs from " + std::to_string(cols));
        doc.matrices.push_back({name, IntMatrix::from_rows(data, cols)});
    }
}

std::string knot_ref(const engine::SGFactBase& base, const json& f, const char* key, const std::string& path)
{
    const std::string k = as_string(require(f, key, path), path + "." + key);
    if (!base.has_knot(k))
        fail(path + "." + key, "dangling reference to knot '" + k + "'");
    return k;
}

void parse_fact(const InputDocument& doc, NamedFactBase& nb, const json& f, const std::string& path)
{
    using engine::FactKind;
    using engine::SGFact;
    const std::string kind_s = as_string(require(f, "kind", path), path + ".kind");
    const auto kind = engine::fact_kind_from_string(kind_s);
    if (!kind)
        fail(path + ".kind", "unknown fact kind '" + kind_s + "'");
    const std::string source = f.contains("source") ? as_string(f.at("source"), path + ".source") : std::string();
    FactOrigin origin;
    SGFact fact;
    auto& base = nb.base;

    switch (*kind) {
    case FactKind::PageWitness: {
        check_keys(f, path, {"kind", "subject", "genus", "surface", "curve", "source"});
        const std::string subj = knot_ref(base, f, "subject", path);
        std::optional<Int> genus;
        if (f.contains("genus"))
            genus = as_int(f.at("genus"), path + ".genus");
        if (f.contains("surface") != f.contains("curve"))
            fail(path, "'surface' and 'curve' go together");
        if (f.contains("surface")) {
            origin.surface = as_string(f.at("surface"), path + ".surface");
            origin.curve = as_string(f.at("curve"), path + ".curve");
            if (!contains(doc.surfaces, *origin.surface))
                fail(path + ".surface", "dangling reference to surface '" + *origin.surface + "'");
            if (!contains(doc.curves, *origin.curve))
                fail(path + ".curve", "dangling reference to curve '" + *origin.curve + "'");
            const auto& nc = doc.curve(*origin.curve);
            if (nc.surface != *origin.surface)
                fail(path + ".curve", "curve '" + nc.name + "' does not live on '" + *origin.surface + "'");
            const auto& page = doc.surface(*origin.surface).surface;
            if (!ribbon::is_nonseparating(page, nc.curve))
                fail(path, "invariant 'legendrian-realizable' violated: curve '" + nc.name + "' is null-homologous");
            const Int framing = seifert::page_framing_self_linking(page, nc.curve);
            if (framing != base.knot(subj).tb)
                fail(path, "invariant 'framing-agreement' violated: page framing of '" + nc.name + "' is " +
                               std::to_string(framing) + " but tb(" + subj + ") = " + std::to_string(base.knot(subj).tb));
            if (genus && *genus != page.genus())
                fail(path + ".genus", "stated genus " + std::to_string(*genus) + " but page '" + *origin.surface +
                                          "' has genus " + std::to_string(page.genus()));
            genus = page.genus();
        }
        if (!genus)
            fail(path, "page-witness needs 'genus' or a 'surface'/'curve' pair");
        if (*genus < 0)
            fail(path + ".genus", "genus must be nonnegative");
        fact = SGFact::page_witness(subj, *genus, source);
        break;
    }
    case FactKind::PositiveTb:
        check_keys(f, path, {"kind", "subject", "source"});
        fact = SGFact::positive_tb(knot_ref(base, f, "subject", path), source);
        break;
    case FactKind::SurgeryBound: {
        check_keys(f, path, {"kind", "subject", "bound", "source"});
        const std::string subj = knot_ref(base, f, "subject", path);
        const Int bound = as_int(require(f, "bound", path), path + ".bound");
        if (bound < 0)
            fail(path + ".bound", "bound must be nonnegative");
        fact = SGFact::surgery_bound(subj, bound, source);
        break;
    }
    case FactKind::NonplanarSurgery: {
        check_keys(f, path, {"kind", "group", "hf_module", "source"});
        const json& g = as_array(require(f, "group", path), path + ".group");
        if (g.empty())
            fail(path + ".group", "group must not be empty");
        std::vector<std::string> group;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const std::string name = as_string(g[k], path + ".group[" + std::to_string(k) + "]");
            if (!base.has_knot(name))
                fail(path + ".group[" + std::to_string(k) + "]", "dangling reference to knot '" + name + "'");
            group.push_back(name);
        }
        if (f.contains("hf_module")) {
            origin.hf_module = as_string(f.at("hf_module"), path + ".hf_module");
            if (!contains(doc.hf_modules, *origin.hf_module))
                fail(path + ".hf_module", "dangling reference to HF module '" + *origin.hf_module + "'");
            const auto& hm = doc.hf_module(*origin.hf_module);
            if (!hm.classes)
                fail(path + ".hf_module", "module '" + hm.name + "' declares no contact classes");
            if (hm.classes->class_count != static_cast<Int>(group.size()))
                fail(path, "group has " + std::to_string(group.size()) + " knots but module '" + hm.name + "' has " +
                               std::to_string(hm.classes->class_count) + " contact classes");
            std::set<Int> rots;
            for (const auto& k : group) {
                rots.insert(base.knot(k).rot);
                if (hm.surgery_n && base.knot(k).tb != -*hm.surgery_n)
                    fail(path, "invariant 'surgery-coefficient' violated: tb(" + k + ") = " +
                                   std::to_string(base.knot(k).tb) + " but the module is for tb = -" +
                                   std::to_string(*hm.surgery_n));
            }
            if (hm.classes->distinct && rots.size() != group.size())
                fail(path, "invariant 'distinct-classes' violated: group rotation numbers are not pairwise distinct");
            try {
                if (!hfbook::forces_nonplanar(*hm.classes, hm.module))
                    fail(path, "module '" + hm.name + "' does not force a non-planar surgery (excess " +
                                   std::to_string(hfbook::pigeonhole_excess(*hm.classes, hm.module)) +
                                   ", HF_red rank " + std::to_string(hfbook::hf_red_rank(hm.module)) + ")");
            } catch (const PreconditionError& e) {
                fail(path, e.what());
            }
        }
        fact = SGFact::nonplanar_surgery(std::move(group), source);
        break;
    }
    case FactKind::StabilizationOf: {
        check_keys(f, path, {"kind", "subject", "parent", "sign", "source"});
        const std::string subj = knot_ref(base, f, "subject", path);
        const std::string parent = knot_ref(base, f, "parent", path);
        const Int sign = as_int(require(f, "sign", path), path + ".sign");
        if (sign != 1 && sign != -1)
            fail(path + ".sign", "stabilization sign must be 1 or -1");
        fact = SGFact::stabilization_of(subj, parent, static_cast<int>(sign), source);
        break;
    }
    case FactKind::OrientationMirror:
        check_keys(f, path, {"kind", "subject", "partner", "source"});
        fact = SGFact::orientation_mirror(knot_ref(base, f, "subject", path), knot_ref(base, f, "partner", path),
                                          source);
        break;
    case FactKind::ClassificationAxiom: {
        check_keys(f, path, {"kind", "subject", "family", "parameter", "source"});
        const std::string subj = knot_ref(base, f, "subject", path);
        const std::string fam = as_string(require(f, "family", path), path + ".family");
        engine::KnotFamily family;
        if (fam == "torus")
            family = engine::KnotFamily::Torus;
        else if (fam == "twist")
            family = engine::KnotFamily::Twist;
        else
            fail(path + ".family", "unknown family '" + fam + "' (expected 'torus' or 'twist')");
        const Int param = as_int(require(f, "parameter", path), path + ".parameter");
        if (param < 1)
            fail(path + ".parameter", "family parameter must be >= 1");
        fact = SGFact::classification(subj, family, param, source);
        break;
    }
    }
    base.add_fact(std::move(fact));
    nb.origins.push_back(std::move(origin));
}

void parse_facts(const json& root, InputDocument& doc)
{
    const json* sec = section(root, "facts");
    if (!sec)
        return;
    for (std::size_t i = 0; i < sec->size(); ++i) {
        const json& r = (*sec)[i];
        const std::string path = item_path("facts", i);
        check_keys(r, path, {"name", "knots", "facts"});
        NamedFactBase nb;
        nb.name = as_string(require(r, "name", path), path + ".name");
        check_unique(doc.facts, nb.name, path);
        if (r.contains("knots")) {
            const json& ks = as_array(r.at("knots"), path + ".knots");
            for (std::size_t k = 0; k < ks.size(); ++k) {
                const std::string kp = path + ".knots[" + std::to_string(k) + "]";
                check_keys(ks[k], kp, {"name", "topo_type", "tb", "rot", "tags"});
                engine::LegendrianDesc d;
                d.name = as_string(require(ks[k], "name", kp), kp + ".name");
                d.topo_type = ks[k].contains("topo_type") ? as_string(ks[k].at("topo_type"), kp + ".topo_type") : "";
                d.tb = as_int(require(ks[k], "tb", kp), kp + ".tb");
                d.rot = as_int(require(ks[k], "rot", kp), kp + ".rot");
                if (ks[k].contains("tags")) {
                    const json& tags = as_array(ks[k].at("tags"), kp + ".tags");
                    for (std::size_t t = 0; t < tags.size(); ++t)
                        d.tags.push_back(as_string(tags[t], kp + ".tags[" + std::to_string(t) + "]"));
                }
                try {
                    nb.base.add_knot(std::move(d));
                } catch (const InputError& e) {
                    fail(kp, e.what());
                }
            }
        }
        if (r.contains("facts")) {
            const json& fs = as_array(r.at("facts"), path + ".facts");
            for (std::size_t k = 0; k < fs.size(); ++k)
                parse_fact(doc, nb, fs[k], path + ".facts[" + std::to_string(k) + "]");
        }
        doc.facts.push_back(std::move(nb));
    }
}

json surface_json(const NamedSurface& s)
{
    const auto& f = s.surface;
    json feet = json::array();
    for (auto b : f.feet_order())
        feet.push_back(b + 1);
    json crossings = json::array();
    for (std::size_t i = 0; i < f.band_count(); ++i)
        for (std::size_t j = i; j < f.band_count(); ++j)
            if (f.crossings()(i, j) != 0)
                crossings.push_back({i + 1, j + 1, f.crossings()(i, j)});
    return {{"name", s.name}, {"bands", f.band_count()}, {"feet", feet}, {"twists", f.twists()}, {"crossings", crossings}};
}

json fact_json(const engine::SGFact& f, const FactOrigin& o)
{
    using engine::FactKind;
    json j = {{"kind", engine::to_string(f.kind)}};
    switch (f.kind) {
    case FactKind::PageWitness:
        j["subject"] = f.subject();
        j["genus"] = f.value;
        if (o.surface) {
            j["surface"] = *o.surface;
            j["curve"] = *o.curve;
        }
        break;
    case FactKind::PositiveTb:
        j["subject"] = f.subject();
        break;
    case FactKind::SurgeryBound:
        j["subject"] = f.subject();
        j["bound"] = f.value;
        break;
    case FactKind::NonplanarSurgery:
        j["group"] = f.subjects;
        if (o.hf_module)
            j["hf_module"] = *o.hf_module;
        break;
    case FactKind::StabilizationOf:
        j["subject"] = f.subject();
        j["parent"] = f.other;
        j["sign"] = f.value;
        break;
    case FactKind::OrientationMirror:
        j["subject"] = f.subject();
        j["partner"] = f.other;
        break;
    case FactKind::ClassificationAxiom:
        j["subject"] = f.subject();
        j["family"] = f.family == engine::KnotFamily::Torus ? "torus" : "twist";
        j["parameter"] = f.family_parameter;
        break;
    }
    if (!f.source.empty())
        j["source"] = f.source;
    return j;
}

}  // namespace

const NamedSurface& InputDocument::surface(const std::string& name) const
{
    return lookup(surfaces, name, "surface");
}

const NamedCurve& InputDocument::curve(const std::string& name) const
{
    return lookup(curves, name, "curve");
}

const NamedOpenBook& InputDocument::open_book(const std::string& name) const
{
    return lookup(open_books, name, "open book");
}

const NamedSteinProblem& InputDocument::stein_problem(const std::string& name) const
{
    return lookup(stein_problems, name, "stein problem");
}

const NamedHFModule& InputDocument::hf_module(const std::string& name) const
{
    return lookup(hf_modules, name, "HF module");
}

const NamedFactBase& InputDocument::fact_base(const std::string& name) const
{
    return lookup(facts, name, "fact base");
}

ribbon::OpenBook InputDocument::build_open_book(const std::string& name) const
{
    const auto& ob = open_book(name);
    ribbon::OpenBook out{surface(ob.page).surface, {}};
    for (const auto& t : ob.monodromy)
        out.monodromy.push_back({curve(t.curve).curve, t.sign});
    out.validate();
    return out;
}

InputDocument parse_input(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based; turn it into line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": syntax error: " +
                         e.what());
    }
    if (root.is_null())
        root = json::object();
    check_keys(root, "document",
               {"surfaces", "curves", "open_books", "stein_problems", "hf_modules", "matrices", "facts"});

    InputDocument doc;
    parse_surfaces(root, doc);
    parse_curves(root, doc);
    parse_open_books(root, doc);
    parse_stein(root, doc);
    parse_hf(root, doc);
    parse_matrices(root, doc);
    parse_facts(root, doc);
    return doc;
}

InputDocument parse_input_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_input(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json to_json(const InputDocument& doc)
{
    json root = json::object();

    json surfaces = json::array();
    for (const auto& s : doc.surfaces)
        surfaces.push_back(surface_json(s));
    root["surfaces"] = surfaces;

    json curves = json::array();
    for (const auto& c : doc.curves) {
        json j = {{"name", c.name}, {"surface", c.surface}, {"coefficients", c.curve.coefficients}};
        if (c.curve.traversal) {
            json t = json::array();
            for (const auto& pass : *c.curve.traversal)
                t.push_back(pass.sign * static_cast<Int>(pass.band + 1));
            j["traversal"] = t;
        }
        curves.push_back(j);
    }
    root["curves"] = curves;

    json books = json::array();
    for (const auto& ob : doc.open_books) {
        json mono = json::array();
        for (const auto& t : ob.monodromy)
            mono.push_back({{"curve", t.curve}, {"sign", t.sign}});
        books.push_back({{"name", ob.name}, {"page", ob.page}, {"monodromy", mono}});
    }
    root["open_books"] = books;

    json steins = json::array();
    for (const auto& sp : doc.stein_problems) {
        json cs = json::array();
        for (const auto& c : sp.problem.curves) {
            json j = {{"name", c.name}, {"traversal", c.traversal}};
            if (c.word) {
                json w = json::array();
                for (const auto& run : *c.word)
                    w.push_back(run.sign * static_cast<Int>(run.handle + 1));
                j["word"] = w;
            }
            if (c.base_rotation)
                j["rotation"] = *c.base_rotation;
            if (c.sign != 1)
                j["sign"] = c.sign;
            cs.push_back(j);
        }
        json j = {{"name", sp.name},
                  {"one_handles", sp.problem.one_handles},
                  {"curves", cs},
                  {"distinguished", sp.problem.curves[sp.problem.distinguished].name}};
        if (sp.open_book)
            j["open_book"] = *sp.open_book;
        steins.push_back(j);
    }
    root["stein_problems"] = steins;

    json hfs = json::array();
    for (const auto& h : doc.hf_modules) {
        json j = {{"name", h.name}};
        if (h.surgery_n) {
            j["surgery_n"] = *h.surgery_n;
        } else {
            json slots = json::array();
            for (const auto& s : h.module.slots())
                slots.push_back({{"towers", s.towers}, {"finite_z", s.finite_z}});
            j["slots"] = slots;
        }
        if (h.classes)
            j["contact_classes"] = {
                {"count", h.classes->class_count}, {"distinct", h.classes->distinct}, {"exclusion", h.classes->exclusion}};
        hfs.push_back(j);
    }
    root["hf_modules"] = hfs;

    json mats = json::array();
    for (const auto& m : doc.matrices) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.matrix.rows(); ++i)
            rows.push_back(m.matrix.row(i));
        mats.push_back({{"name", m.name}, {"rows", rows}, {"cols", m.matrix.cols()}});
    }
    root["matrices"] = mats;

    json facts = json::array();
    for (const auto& nb : doc.facts) {
        json knots = json::array();
        for (const auto& k : nb.base.knots()) {
            json j = {{"name", k.name}, {"topo_type", k.topo_type}, {"tb", k.tb}, {"rot", k.rot}};
            if (!k.tags.empty())
                j["tags"] = k.tags;
            knots.push_back(j);
        }
        json fs = json::array();
        for (std::size_t i = 0; i < nb.base.facts().size(); ++i)
            fs.push_back(fact_json(nb.base.facts()[i], nb.origins[i]));
        facts.push_back({{"name", nb.name}, {"knots", knots}, {"facts", fs}});
    }
    root["facts"] = facts;
    return root;
}

std::string serialize(const InputDocument& doc)
{
    return to_json(doc).dump(2) + "\n";
}

}  // namespace sgtk::doc
