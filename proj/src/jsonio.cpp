#include "soergel/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace soergel {

Json laurent_to_json(const Laurent& p) {
    Json j;
    auto [offset, coeffs] = p.coeff_list();
    j["offset"] = offset;
    Json arr = Json::array();
    for (const Int& c : coeffs) arr.push_back(c.get_str());
    j["coeffs"] = arr;
    return j;
}

Laurent laurent_from_json(const Json& j) {
    Laurent p;
    int offset = j.at("offset").get<int>();
    const Json& arr = j.at("coeffs");
    for (size_t i = 0; i < arr.size(); ++i) {
        Int c(arr[i].get<std::string>());
        p.add_term(offset + static_cast<int>(i), c);
    }
    return p;
}

static Json ring_to_json(const CoefRing& r) {
    Json j;
    j["kind"] = r.tag();
    j["ell"] = r.ell;
    return j;
}

static CoefRing ring_from_json(const Json& j) {
    std::string tag = j.at("kind").get<std::string>();
    long ell = j.at("ell").get<long>();
    if (tag == "K") return rationals();
    if (tag == "O") return local_integers(ell);
    if (tag == "F") return prime_field(ell);
    throw config_error("unknown ring tag '" + tag + "'");
}

Json module_to_json(const GradedModule& m) {
    Json j;
    j["schema"] = kModuleSchemaVersion;
    j["ring"] = ring_to_json(m.ring);
    j["degrees"] = m.degrees;
    Json acts = Json::array();
    for (const Mat& a : m.actions) {
        Json rows = Json::array();
        for (int i = 0; i < a.nr; ++i) {
            Json row = Json::array();
            for (int jx = 0; jx < a.nc; ++jx) row.push_back(rat_to_string(a.at(i, jx)));
            rows.push_back(row);
        }
        acts.push_back(rows);
    }
    j["actions"] = acts;
    return j;
}

GradedModule module_from_json(const Json& j) {
    if (j.at("schema").get<std::string>() != kModuleSchemaVersion)
        throw config_error("module schema mismatch");
    GradedModule m;
    m.ring = ring_from_json(j.at("ring"));
    m.degrees = j.at("degrees").get<std::vector<int>>();
    int r = static_cast<int>(m.degrees.size());
    for (const Json& rows : j.at("actions")) {
        Mat a(r, r);
        require(static_cast<int>(rows.size()) == r, "module action shape mismatch");
        for (int i = 0; i < r; ++i) {
            require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == r,
                    "module action shape mismatch");
            for (int c = 0; c < r; ++c)
                a.at(i, c) = rat_from_string(rows[static_cast<size_t>(i)][static_cast<size_t>(c)].get<std::string>());
        }
        m.actions.push_back(std::move(a));
    }
    return m;
}

Json indec_table_to_json(const IndecTable& t) {
    const WeylGroup& g = t.group();
    Json j;
    j["schema"] = kModuleSchemaVersion;
    j["engine"] = kEngineVersion;
    j["preset"] = g.datum().label;
    j["ring"] = ring_to_json(t.ring());
    Json elems = Json::array();
    for (int w = 0; w < g.size(); ++w) {
        Json e;
        e["w"] = g.word_string(w);
        e["module"] = module_to_json(t.d_module(w));
        Json ch = Json::object();
        for (const auto& [x, p] : t.character(w).support()) ch[g.word_string(x)] = laurent_to_json(p);
        e["character"] = ch;
        elems.push_back(e);
    }
    j["elements"] = elems;
    Json homs = Json::array();
    for (int x = 0; x < g.size(); ++x) {
        Json row = Json::array();
        for (int w = 0; w < g.size(); ++w) row.push_back(laurent_to_json(t.hom_grk(x, w)));
        homs.push_back(row);
    }
    j["hom_graded"] = homs;
    return j;
}

CachedLibrary indec_table_from_json(const Json& j, const WeylGroup& g) {
    if (j.at("schema").get<std::string>() != kModuleSchemaVersion)
        throw config_error("cache schema mismatch");
    if (j.at("engine").get<std::string>() != kEngineVersion)
        throw config_error("cache engine version mismatch");
    if (j.at("preset").get<std::string>() != g.datum().label)
        throw config_error("cache preset mismatch");
    CachedLibrary lib;
    lib.ring = ring_from_json(j.at("ring"));
    const Json& elems = j.at("elements");
    require(static_cast<int>(elems.size()) == g.size(), "cache element count mismatch");
    // map canonical words back to indices
    std::map<std::string, int> index;
    for (int w = 0; w < g.size(); ++w) index[g.word_string(w)] = w;
    lib.modules.resize(static_cast<size_t>(g.size()));
    lib.characters.resize(static_cast<size_t>(g.size()));
    for (const Json& e : elems) {
        auto it = index.find(e.at("w").get<std::string>());
        require(it != index.end(), "cache contains an unknown element");
        lib.modules[static_cast<size_t>(it->second)] = module_from_json(e.at("module"));
        HeckeElt ch;
        for (const auto& [word, pj] : e.at("character").items()) {
            auto xit = index.find(word);
            require(xit != index.end(), "cache character references an unknown element");
            ch.add_term(xit->second, laurent_from_json(pj));
        }
        lib.characters[static_cast<size_t>(it->second)] = std::move(ch);
    }
    const Json& homs = j.at("hom_graded");
    require(static_cast<int>(homs.size()) == g.size(), "cache Hom table shape mismatch");
    lib.homs.assign(static_cast<size_t>(g.size()), std::vector<Laurent>(static_cast<size_t>(g.size())));
    for (int x = 0; x < g.size(); ++x) {
        require(static_cast<int>(homs[static_cast<size_t>(x)].size()) == g.size(),
                "cache Hom table shape mismatch");
        for (int w = 0; w < g.size(); ++w)
            lib.homs[static_cast<size_t>(x)][static_cast<size_t>(w)] =
                laurent_from_json(homs[static_cast<size_t>(x)][static_cast<size_t>(w)]);
    }
    return lib;
}

Json coinvariants_to_json(const Coinvariants& c) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "coinvariants";
    j["preset"] = c.datum().label;
    j["ring"] = ring_to_json(c.ring());
    j["rank"] = c.total_rank();
    j["graded_rank"] = laurent_to_json(c.graded_rank());
    Json degs = Json::array();
    for (int m = 0; m <= c.top_degree(); ++m) {
        Json d;
        d["degree"] = 2 * m;
        d["dim"] = c.dim(m);
        Json monos = Json::array();
        for (int idx : c.basis_monos(m)) {
            const auto& e = c.poly().monos(m)[static_cast<size_t>(idx)];
            std::string name;
            for (size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (!name.empty()) name += "*";
                name += "y" + std::to_string(k + 1);
                if (e[k] > 1) name += "^" + std::to_string(e[k]);
            }
            monos.push_back(name.empty() ? "1" : name);
        }
        d["basis"] = monos;
        d["invariants_dim"] = c.invariants(m).nc;
        d["ideal_dim"] = c.ideal_rref(m).nc;
        degs.push_back(d);
    }
    j["degrees"] = degs;
    return j;
}

// --- table emitters -----------------------------------------------------------

Json klpoly_to_json(const WeylGroup& g, const KLTable& t, const InversionReport& rep) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["preset"] = g.datum().label;
    j["kind"] = "klpoly";
    Json table = Json::array();
    for (int w = 0; w < g.size(); ++w)
        for (int x = 0; x < g.size(); ++x) {
            if (!g.bruhat_leq(x, w)) continue;
            Json e;
            e["x"] = g.word_string(x);
            e["w"] = g.word_string(w);
            e["P_q"] = laurent_to_json(t.p_poly(g, x, w));
            e["h_v"] = laurent_to_json(t.h_poly(x, w));
            table.push_back(e);
        }
    j["table"] = table;
    j["inversion_check"] = rep.pass ? "pass" : rep.to_string(g);
    return j;
}

std::string klpoly_to_csv(const WeylGroup& g, const KLTable& t) {
    std::ostringstream os;
    os << "x,w,q_offset,P_coeffs\n";
    for (int w = 0; w < g.size(); ++w)
        for (int x = 0; x < g.size(); ++x) {
            if (!g.bruhat_leq(x, w)) continue;
            auto [off, coeffs] = t.p_poly(g, x, w).coeff_list();
            os << g.word_string(x) << "," << g.word_string(w) << "," << off << ",";
            for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? " " : "") << coeffs[i].get_str();
            os << "\n";
        }
    return os.str();
}

Json stalks_to_json(const CharCalc& cc, const std::string& preset) {
    const WeylGroup& g = cc.group();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["preset"] = preset;
    j["ring"] = cc.ring().tag();
    j["prime"] = cc.ring().ell;
    j["kind"] = "stalks";
    Json table = Json::array();
    for (int w = 0; w < g.size(); ++w)
        for (int x = 0; x < g.size(); ++x) {
            if (!g.bruhat_leq(x, w)) continue;
            Json e;
            e["x"] = g.word_string(x);
            e["w"] = g.word_string(w);
            e["h"] = laurent_to_json(cc.stalk_poly(x, w));
            e["rank"] = cc.stalk_rank(x, w);
            table.push_back(e);
        }
    j["table"] = table;
    return j;
}

std::string stalks_to_csv(const CharCalc& cc) {
    const WeylGroup& g = cc.group();
    std::ostringstream os;
    os << "x,w,v_offset,h_coeffs,ungraded\n";
    for (int w = 0; w < g.size(); ++w)
        for (int x = 0; x < g.size(); ++x) {
            if (!g.bruhat_leq(x, w)) continue;
            auto [off, coeffs] = cc.stalk_poly(x, w).coeff_list();
            os << g.word_string(x) << "," << g.word_string(w) << "," << off << ",";
            for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? " " : "") << coeffs[i].get_str();
            os << "," << cc.stalk_rank(x, w) << "\n";
        }
    return os.str();
}

Json mult_to_json(const CharCalc& cc, const std::string& preset) {
    const WeylGroup& g = cc.group();
    int n = g.size();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["preset"] = preset;
    j["ring"] = cc.ring().tag();
    j["prime"] = cc.ring().ell;
    j["kind"] = "mult";
    Json words = Json::array();
    for (int w = 0; w < n; ++w) words.push_back(g.word_string(w));
    j["words"] = words;
    auto int_matrix = [&](auto&& entry) {
        Json rows = Json::array();
        for (int a = 0; a < n; ++a) {
            Json row = Json::array();
            for (int b = 0; b < n; ++b) row.push_back(entry(a, b));
            rows.push_back(row);
        }
        return rows;
    };
    j["homrank"] = int_matrix([&](int v, int w) { return cc.hom_ungraded(g.inverse(v), g.inverse(w)); });
    j["tilt"] = int_matrix([&](int w, int v) { return cc.tilt(w, v); });
    j["comp"] = int_matrix([&](int w, int v) { return cc.comp(w, v); });
    j["comp_inverse"] = int_matrix([&](int v, int w) { return cc.comp_inverse(v, w).get_str(); });
    Json euler = Json::array();
    for (int v = 0; v < n; ++v) {
        Json row = Json::array();
        for (int w = 0; w < n; ++w) {
            Int chi = cc.comp_inverse(v, w);
            if (g.length(v) % 2 != 0) chi = -chi;
            row.push_back(chi.get_str());
        }
        euler.push_back(row);
    }
    j["euler_characteristics"] = euler; // chi_v(IC_w) = (-1)^{l(v)} inverse(v, w)
    std::vector<std::string> notes;
    j["checks"] = Json::object();
    j["checks"]["pairing_identity"] = cc.check_pairing_identity(&notes);
    j["checks"]["tilt_roundtrip"] = cc.check_tilt_roundtrip(&notes);
    j["checks"]["tilt_stalk_identity"] = cc.check_tilt_stalk_identity(&notes);
    j["checks"]["symmetry"] = cc.check_symmetry(&notes);
    j["checks"]["euler_inverse"] = cc.check_euler_inverse(&notes);
    j["check_notes"] = notes;
    return j;
}

std::string mult_to_csv(const CharCalc& cc) {
    const WeylGroup& g = cc.group();
    std::ostringstream os;
    os << "w,v,tilt,comp,homrank\n";
    for (int w = 0; w < g.size(); ++w)
        for (int v = 0; v < g.size(); ++v)
            os << g.word_string(w) << "," << g.word_string(v) << "," << cc.tilt(w, v) << ","
               << cc.comp(w, v) << "," << cc.hom_ungraded(g.inverse(v), g.inverse(w)) << "\n";
    return os.str();
}

Json decomp_to_json(const WeylGroup& g, const DecompMatrices& dm, const std::string& preset,
                    long ell) {
    int n = g.size();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["preset"] = preset;
    j["prime"] = ell;
    j["kind"] = "decomp";
    Json words = Json::array();
    for (int w = 0; w < n; ++w) words.push_back(g.word_string(w));
    j["words"] = words;
    auto emit = [&](const std::vector<std::vector<int>>& m) {
        Json rows = Json::array();
        for (int a = 0; a < n; ++a) {
            Json row = Json::array();
            for (int b = 0; b < n; ++b) row.push_back(m[static_cast<size_t>(a)][static_cast<size_t>(b)]);
            rows.push_back(row);
        }
        return rows;
    };
    j["e_matrix"] = emit(dm.e_matrix);
    j["t_matrix"] = emit(dm.t_matrix);
    j["p_matrix"] = emit(dm.p_matrix);
    j["i_matrix"] = emit(dm.i_matrix);
    j["provenance"] = dm.provenance;
    j["reduction_check"] = dm.reduction_pass ? "pass" : "fail";
    j["reduction_failures"] = dm.reduction_failures;
    return j;
}

std::string decomp_to_csv(const WeylGroup& g, const DecompMatrices& dm) {
    std::ostringstream os;
    os << "matrix,v,w,entry\n";
    auto emit = [&](const char* name, const std::vector<std::vector<int>>& m) {
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b)
                if (m[static_cast<size_t>(a)][static_cast<size_t>(b)] != 0)
                    os << name << "," << g.word_string(a) << "," << g.word_string(b) << ","
                       << m[static_cast<size_t>(a)][static_cast<size_t>(b)] << "\n";
    };
    emit("E", dm.e_matrix);
    emit("T", dm.t_matrix);
    emit("P", dm.p_matrix);
    emit("I", dm.i_matrix);
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw config_error("cannot write " + path);
    f << content;
    if (!content.empty() && content.back() != '\n') f << "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace soergel
