#include "sgtk/commands.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sgtk/hfbook.hpp"
#include "sgtk/seifert.hpp"
#include "sgtk/sgengine.hpp"
#include "sgtk/stein.hpp"
#include "sgtk/verify.hpp"
#include "sgtk/zlinalg.hpp"

namespace sgtk::cmd {

using json = nlohmann::json;
using zlinalg::Int;
using zlinalg::IntMatrix;
using zlinalg::IntVector;

namespace {

using Row = std::vector<std::string>;

std::string table(const Row& header, const std::vector<Row>& rows)
{
    std::vector<std::size_t> w(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
        w[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < w.size(); ++c)
            w[c] = std::max(w[c], r[c].size());

    std::ostringstream out;
    auto line = [&](const Row& r) {
        std::string s;
        for (std::size_t c = 0; c < r.size(); ++c) {
            s += r[c];
            if (c + 1 < r.size())
                s += std::string(w[c] - r[c].size() + 2, ' ');
        }
        out << s << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto x : w)
        total += x + 2;
    out << std::string(total - 2, '-') << '\n';
    for (const auto& r : rows)
        line(r);
    return out.str();
}

std::string vec_str(const IntVector& v)
{
    return zlinalg::to_string(v);
}

json matrix_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(m.row(i));
    return rows;
}

Report tb(const doc::InputDocument& d)
{
    Report rep;
    rep.machine = {{"command", "tb"}, {"surfaces", json::array()}, {"curves", json::array()}};
    std::vector<Row> srows;
    for (const auto& s : d.surfaces) {
        const auto& f = s.surface;
        srows.push_back({s.name, std::to_string(f.band_count()), std::to_string(f.euler_characteristic()),
                         std::to_string(f.genus()), std::to_string(f.boundary_count())});
        rep.machine["surfaces"].push_back({{"name", s.name},
                                           {"bands", f.band_count()},
                                           {"euler_characteristic", f.euler_characteristic()},
                                           {"genus", f.genus()},
                                           {"boundary_components", f.boundary_count()},
                                           {"seifert_matrix", matrix_json(seifert::seifert_matrix(f).V)}});
    }
    std::vector<Row> rows;
    for (const auto& c : d.curves) {
        const auto& f = d.surface(c.surface).surface;
        const Int t = seifert::page_framing_self_linking(f, c.curve);
        rows.push_back({c.name, c.surface, vec_str(c.curve.coefficients), std::to_string(t)});
        rep.machine["curves"].push_back(
            {{"name", c.name}, {"surface", c.surface}, {"coefficients", c.curve.coefficients}, {"tb", t}});
    }
    std::ostringstream out;
    if (!srows.empty())
        out << table({"surface", "bands", "chi", "genus", "boundary"}, srows) << '\n';
    out << table({"curve", "surface", "class", "tb"}, rows);
    rep.human = out.str();
    return rep;
}

Report rot(const doc::InputDocument& d)
{
    Report rep;
    rep.machine = {{"command", "rot"}, {"problems", json::array()}};
    std::ostringstream out;
    for (const auto& sp : d.stein_problems) {
        const auto& p = sp.problem;
        const auto res = stein::rotation_number(p);
        const IntMatrix d2 = stein::boundary_matrix(p);

        out << "stein problem " << sp.name << " (distinguished " << p.curves[p.distinguished].name << ")\n";
        std::vector<Row> rows;
        for (std::size_t c = 0; c < p.curves.size(); ++c)
            rows.push_back({p.curves[c].name, vec_str(d2.column(c)), std::to_string(res.c1_cochain[c])});
        out << table({"2-handle", "d2", "base rot"}, rows);
        out << "ker d2 rank " << res.kernel_rank << '\n';

        json j = {{"name", sp.name},
                  {"boundary_matrix", matrix_json(d2)},
                  {"c1_cochain", res.c1_cochain},
                  {"kernel_rank", res.kernel_rank},
                  {"ambiguous", res.ambiguous}};
        json pairings = json::array();
        for (const auto& kp : res.basis_pairings)
            pairings.push_back({{"vector", kp.vector}, {"pairing", kp.pairing}});
        j["basis_pairings"] = pairings;

        if (res.ambiguous) {
            rep.ok = false;
            out << "rot: ambiguous, c1 pairs nontrivially with classes that avoid the distinguished curve\n";
            for (const auto& kp : res.basis_pairings)
                out << "  <c1, " << vec_str(kp.vector) << "> = " << kp.pairing << '\n';
            j["rot"] = nullptr;
            j["h"] = nullptr;
        } else {
            std::string h;
            for (std::size_t c = 0; c < res.h->size(); ++c) {
                const Int x = (*res.h)[c];
                if (x == 0)
                    continue;
                h += h.empty() ? (x < 0 ? "-" : "") : (x < 0 ? " - " : " + ");
                const Int a = x < 0 ? -x : x;
                if (a != 1)
                    h += std::to_string(a) + "*";
                h += "S_" + p.curves[c].name;
            }
            out << "h = " << h << "\nrot = " << *res.rot << '\n';
            j["rot"] = *res.rot;
            j["h"] = *res.h;
            j["h_text"] = h;
        }
        out << '\n';
        rep.machine["problems"].push_back(j);
    }
    rep.human = out.str();
    return rep;
}

Report snf(const doc::InputDocument& d)
{
    Report rep;
    rep.machine = {{"command", "snf"}, {"matrices", json::array()}};
    std::vector<std::pair<std::string, IntMatrix>> targets;
    for (const auto& m : d.matrices)
        targets.emplace_back(m.name, m.matrix);
    for (const auto& sp : d.stein_problems)
        targets.emplace_back("d2(" + sp.name + ")", stein::boundary_matrix(sp.problem));
    for (const auto& s : d.surfaces)
        targets.emplace_back("J(" + s.name + ")", ribbon::intersection_form(s.surface));

    std::vector<Row> rows;
    for (const auto& [name, a] : targets) {
        const auto s = zlinalg::smith_normal_form(a);
        const IntVector diag = s.diagonal();
        IntVector factors;
        for (Int x : diag)
            if (x != 0)
                factors.push_back(x);
        rows.push_back({name, std::to_string(a.rows()) + "x" + std::to_string(a.cols()), std::to_string(s.rank),
                        vec_str(factors)});
        rep.machine["matrices"].push_back({{"name", name},
                                           {"rows", a.rows()},
                                           {"cols", a.cols()},
                                           {"rank", s.rank},
                                           {"invariant_factors", factors},
                                           {"U", matrix_json(s.U)},
                                           {"D", matrix_json(s.D)},
                                           {"V", matrix_json(s.V)}});
    }
    rep.human = table({"matrix", "shape", "rank", "invariant factors"}, rows);
    return rep;
}

Report hf(const doc::InputDocument& d)
{
    Report rep;
    rep.machine = {{"command", "hf"}, {"modules", json::array()}};
    std::ostringstream out;
    for (const auto& h : d.hf_modules) {
        const auto hat = hfbook::hf_hat(h.module);
        const Int red = hfbook::hf_red_rank(h.module);
        out << "module " << h.name;
        if (h.surgery_n)
            out << " (surgery, n = " << *h.surgery_n << ")";
        out << '\n';
        std::vector<Row> rows;
        for (std::size_t i = 0; i < h.module.slots().size(); ++i) {
            const auto& s = h.module.slots()[i];
            rows.push_back({std::to_string(i), std::to_string(s.towers), std::to_string(s.finite_z),
                            std::to_string(hat[i])});
        }
        out << table({"spin^c", "towers", "finite Z", "HF-hat rank"}, rows);
        out << "HF_red rank " << red << '\n';
        json j = {{"name", h.name}, {"spinc_count", h.module.spinc_count()}, {"hf_hat", hat}, {"hf_red_rank", red}};
        if (h.surgery_n) {
            j["surgery_n"] = *h.surgery_n;
            const auto rots = hfbook::trefoil_rotation_list(*h.surgery_n);
            j["rotation_list"] = rots;
            out << "rotation numbers at tb = -" << *h.surgery_n << ": " << vec_str(rots) << '\n';
        }
        if (h.classes) {
            const Int excess = hfbook::pigeonhole_excess(*h.classes, h.module);
            const bool forced = hfbook::forces_nonplanar(*h.classes, h.module);
            out << h.classes->class_count << " contact classes, excess over tower slots " << excess
                << (forced ? ", some class lands in HF_red: no planar open book\n" : ", no obstruction\n");
            j["class_count"] = h.classes->class_count;
            j["pigeonhole_excess"] = excess;
            j["forces_nonplanar"] = forced;
        }
        out << '\n';
        rep.machine["modules"].push_back(j);
    }
    rep.human = out.str();
    return rep;
}

Report sg_bounds(const doc::InputDocument& d)
{
    Report rep;
    rep.machine = {{"command", "sg-bounds"}, {"fact_bases", json::array()}};
    std::ostringstream out;
    for (const auto& nb : d.facts) {
        const auto der = engine::derive_bounds(nb.base);
        out << "fact base " << nb.name << '\n';
        std::vector<Row> rows;
        json knots = json::array();
        for (const auto& k : nb.base.knots()) {
            const auto& iv = der.intervals.at(k.name);
            rows.push_back({k.name, k.topo_type, std::to_string(k.tb), std::to_string(k.rot),
                            engine::format_interval(iv)});
            json trace = json::array();
            for (const auto& s : iv.trace)
                trace.push_back({{"rule", engine::to_string(s.rule)},
                                 {"side", s.side == engine::BoundSide::Lower ? "lower" : "upper"},
                                 {"value", s.value},
                                 {"facts", s.facts},
                                 {"premises", s.premises},
                                 {"text", engine::format_step(nb.base, s)}});
            knots.push_back({{"name", k.name},
                             {"tb", k.tb},
                             {"rot", k.rot},
                             {"lo", iv.lo},
                             {"hi", iv.hi ? json(*iv.hi) : json(nullptr)},
                             {"trace", trace}});
        }
        out << table({"knot", "type", "tb", "rot", "sg"}, rows);
        out << "\nderivations\n";
        for (const auto& k : nb.base.knots()) {
            const auto& iv = der.intervals.at(k.name);
            if (iv.trace.empty())
                continue;
            out << k.name << "  " << engine::format_interval(iv) << '\n';
            for (const auto& s : iv.trace)
                out << "  " << engine::format_step(nb.base, s) << '\n';
        }
        out << '\n';
        rep.machine["fact_bases"].push_back({{"name", nb.name}, {"knots", knots}, {"steps", der.log.size()}});
    }
    rep.human = out.str();
    return rep;
}

Report verify_paper()
{
    Report rep;
    rep.machine = {{"command", "verify-paper"}, {"criteria", json::array()}};
    std::ostringstream out;
    std::size_t passed = 0;
    const auto results = verify::run_acceptance();
    for (const auto& r : results) {
        out << verify::format_result(r) << '\n';
        rep.machine["criteria"].push_back(
            {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        passed += r.passed ? 1 : 0;
        rep.ok = rep.ok && r.passed;
    }
    out << passed << "/" << results.size() << " criteria passed\n";
    rep.machine["passed"] = passed;
    rep.machine["total"] = results.size();
    rep.human = out.str();
    return rep;
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"tb", "rot", "snf", "hf", "sg-bounds", "verify-paper"};
    return names;
}

Report run_command(const std::string& command, const doc::InputDocument& document)
{
    if (command == "tb")
        return tb(document);
    if (command == "rot")
        return rot(document);
    if (command == "snf")
        return snf(document);
    if (command == "hf")
        return hf(document);
    if (command == "sg-bounds")
        return sg_bounds(document);
    if (command == "verify-paper")
        return verify_paper();
    throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace sgtk::cmd
