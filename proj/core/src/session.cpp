#include "qpengine/session.hpp"

#include <json.hpp>

#include <sstream>

namespace qp {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

Scalar jscalar(const json& v)
{
    if (v.is_number_integer())
        return Scalar((long)v.get<long long>());
    if (v.is_string())
        return parse_scalar(v.get<std::string>());
    throw EngineError("Schema", "scalar must be an integer or a \"p/q\" string");
}

GeneratorSystem parse_system(const json& doc)
{
    BaseRing l;
    if (!doc.contains("base") || !doc["base"].is_array())
        throw EngineError("Schema", "missing base components");
    for (const auto& jc : doc["base"]) {
        BaseComponent c;
        c.name = jc.at("name").get<std::string>();
        if (jc.contains("basis"))
            for (const auto& b : jc["basis"])
                c.basis_names.push_back(b.get<std::string>());
        else
            c.basis_names = {"1"};
        int n = (int)c.basis_names.size();
        c.mult.assign(n, std::vector<CompElt>(n, CompElt(n, Scalar(0))));
        if (jc.contains("structure_constants")) {
            const auto& sc = jc["structure_constants"];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        c.mult[i][j][k] = jscalar(sc.at(i).at(j).at(k));
        }
        else if (n == 1)
            c.mult[0][0][0] = 1;
        else
            throw EngineError("Schema", "structure_constants required for dim > 1");
        c.trace_weights.assign(n, Scalar(0));
        const auto& tw = jc.at("trace");
        for (int i = 0; i < n; ++i)
            c.trace_weights[i] = jscalar(tw.at(i));
        l.components.push_back(std::move(c));
    }
    if (doc.contains("frozen"))
        for (const auto& f : doc["frozen"])
            l.frozen.insert(l.component_index(f.get<std::string>()));

    std::vector<Letter> letters;
    std::map<std::string, int> letter_pos;
    if (doc.contains("generators"))
        for (const auto& jl : doc["generators"]) {
            Letter lt;
            lt.name = jl.at("name").get<std::string>();
            lt.source = l.component_index(jl.at("from").get<std::string>());
            lt.target = l.component_index(jl.at("to").get<std::string>());
            lt.degree = jl.at("degree").get<int>();
            letter_pos[lt.name] = (int)letters.size();
            letters.push_back(std::move(lt));
        }
    // action tables in a second pass so letters can reference each other
    int idx = 0;
    if (doc.contains("generators"))
        for (const auto& jl : doc["generators"]) {
            Letter& lt = letters[idx++];
            const BaseComponent& ct = l.components[lt.target];
            const BaseComponent& cs = l.components[lt.source];
            lt.left_action.assign(ct.dim(), {});
            lt.right_action.assign(cs.dim(), {});
            lt.left_action[0][letter_pos.at(lt.name)] = 1;
            lt.right_action[0][letter_pos.at(lt.name)] = 1;
            auto fill = [&](const char* key, const BaseComponent& comp,
                            std::vector<LinComb>& table) {
                if (!jl.contains(key))
                    return;
                for (const auto& [bname, entries] : jl[key].items()) {
                    int b = -1;
                    for (int i = 0; i < comp.dim(); ++i)
                        if (comp.basis_names[i] == bname)
                            b = i;
                    if (b <= 0)
                        throw EngineError("Schema",
                                          lt.name + ": unknown action basis " + bname);
                    LinComb lc;
                    for (const auto& e : entries)
                        lc[letter_pos.at(e.at(0).get<std::string>())] = jscalar(e.at(1));
                    table[b] = std::move(lc);
                }
            };
            fill("left_action", ct, lt.left_action);
            fill("right_action", cs, lt.right_action);
            for (int b = 1; b < ct.dim(); ++b)
                if (lt.left_action[b].empty())
                    throw EngineError("Schema",
                                      lt.name + ": left_action required for every basis element");
            for (int b = 1; b < cs.dim(); ++b)
                if (lt.right_action[b].empty())
                    throw EngineError("Schema",
                                      lt.name + ": right_action required for every basis element");
        }
    return GeneratorSystem(std::move(l), std::move(letters));
}

SessionDocument parse_document_json(const json& doc)
{
    SessionDocument s;
    s.dimension = doc.at("dimension").get<int>();
    s.truncation = doc.at("truncation").get<int>();
    s.gen = parse_system(doc);
    if (doc.contains("eta"))
        for (const auto& je : doc["eta"]) {
            EtaEntry e;
            e.first = s.gen.letter_index(je.at("first").get<std::string>());
            e.second = s.gen.letter_index(je.at("second").get<std::string>());
            e.coeff = jscalar(je.at("coeff"));
            s.eta.push_back(e);
        }
    if (doc.contains("potential"))
        for (const auto& jt : doc["potential"]) {
            std::vector<int> seq;
            for (const auto& w : jt.at("word"))
                seq.push_back(s.gen.letter_index(w.get<std::string>()));
            pot_add(s.gen, s.potential, Word::of(seq), jscalar(jt.at("coeff")));
        }
    if (doc.contains("potential_frozen"))
        for (const auto& jt : doc["potential_frozen"]) {
            std::vector<std::string> names;
            for (const auto& w : jt.at("word"))
                names.push_back(w.get<std::string>());
            s.potential_frozen.push_back({names, jscalar(jt.at("coeff"))});
        }
    if (doc.contains("frozen_generators"))
        for (const auto& f : doc["frozen_generators"])
            s.frozen_letters.push_back(f.get<std::string>());
    const auto& jt = doc.at("task");
    if (jt.is_string())
        s.task = jt.get<std::string>();
    else {
        s.task = jt.at("name").get<std::string>();
        for (const auto& [k, v] : jt.items()) {
            if (k == "name")
                continue;
            s.task_params[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
    }
    if (doc.contains("seed"))
        s.seed = doc["seed"].get<unsigned>();
    return s;
}

ordered_json te_json(const GeneratorSystem& gen, const TensorElement& x)
{
    ordered_json arr = ordered_json::array();
    for (const auto& [w, c] : x.terms) {
        ordered_json term;
        term["coeff"] = scalar_str(c);
        ordered_json word = ordered_json::array();
        if (w.is_unit())
            word.push_back("1_" + gen.base().components[w.unit_component].name +
                           (w.unit_basis ? "." +
                                               gen.base()
                                                   .components[w.unit_component]
                                                   .basis_names[w.unit_basis]
                                         : ""));
        else
            for (int id : w.letters)
                word.push_back(gen.letter(id).name);
        term["word"] = word;
        arr.push_back(term);
    }
    return arr;
}

int task_int(const SessionDocument& s, const std::string& key, int fallback)
{
    auto it = s.task_params.find(key);
    if (it == s.task_params.end())
        return fallback;
    return std::stoi(it->second);
}

ordered_json run_task(const SessionDocument& s)
{
    ordered_json values;
    if (s.task == "check_eta") {
        EtaReport r = check_eta(s.gen, s.eta, s.dimension);
        values["homogeneous_of_degree_2_minus_d"] = r.homogeneous_of_degree_2_minus_d;
        values["antisymmetric"] = r.antisymmetric;
        values["nondegenerate"] = r.nondegenerate;
    }
    else if (s.task == "casimir") {
        Casimir sig = make_casimir(s.gen.base());
        ordered_json comps = ordered_json::array();
        for (int ci = 0; ci < (int)s.gen.base().components.size(); ++ci) {
            const auto& comp = s.gen.base().components[ci];
            ordered_json pairs = ordered_json::array();
            for (size_t k = 0; k < sig.per_component[ci].left.size(); ++k) {
                ordered_json pr;
                ordered_json le = ordered_json::array(), ri = ordered_json::array();
                for (const auto& v : sig.per_component[ci].left[k])
                    le.push_back(scalar_str(v));
                for (const auto& v : sig.per_component[ci].right[k])
                    ri.push_back(scalar_str(v));
                pr["e"] = le;
                pr["e_dual"] = ri;
                pairs.push_back(pr);
            }
            comps.push_back(
                ordered_json{{"component", comp.name}, {"pairs", pairs}});
        }
        values["casimir"] = comps;
        values["dual_basis_identity"] =
            casimir_dual_basis_identity(s.gen.base(), sig);
    }
    else if (s.task == "build_preprojective" || s.task == "check_d_squared") {
        DGPresentation p =
            build_preprojective(s.gen, s.eta, s.potential, s.dimension, s.truncation);
        if (s.task == "build_preprojective") {
            ordered_json table = ordered_json::array();
            for (const auto& [id, val] : p.diff) {
                ordered_json row;
                row["letter"] = p.gen.letter(id).name;
                row["value"] = te_json(p.gen, val);
                row["display"] = te_str(p.gen, val);
                table.push_back(row);
            }
            values["differential"] = table;
        }
        else {
            DSquaredReport r = check_d_squared(p);
            values["d_squared_zero"] = r.ok;
            if (!r.ok) {
                values["witness_letter"] = p.gen.letter(r.witness_letter).name;
                values["witness"] = te_json(p.gen, r.remainder);
            }
        }
    }
    else if (s.task == "h_dim") {
        DGPresentation p =
            build_preprojective(s.gen, s.eta, s.potential, s.dimension, s.truncation + 1);
        int degree = task_int(s, "degree", 0);
        values["degree"] = degree;
        values["dimension"] = h_dim(p, degree, s.truncation);
    }
    else if (s.task == "jacobian") {
        DGPresentation p =
            build_preprojective(s.gen, s.eta, s.potential, s.dimension, s.truncation + 1);
        JacobianPresentation j = jacobian_presentation(p, s.truncation);
        values["dimension"] = j.dim.value;
        values["stable"] = j.dim.stable;
        values["levels"] = ordered_json::array(
            {j.dim.witness_levels.first, j.dim.witness_levels.second});
        ordered_json basis = ordered_json::array();
        for (const auto& w : j.basis)
            basis.push_back(word_str(p.gen, w));
        values["basis"] = basis;
    }
    else if (s.task == "eta_f") {
        EtaFResult ef = make_eta_F(s.gen, s.dimension);
        ordered_json entries = ordered_json::array();
        for (const auto& e : ef.eta_F)
            entries.push_back(ordered_json{{"first", ef.system.letter(e.first).name},
                                           {"second", ef.system.letter(e.second).name},
                                           {"coeff", scalar_str(e.coeff)}});
        values["eta_F"] = entries;
        EtaReport r = check_eta(ef.system, ef.eta_F, s.dimension - 1);
        values["valid_at_d_minus_1"] = r.all();
    }
    else if (s.task == "gl_morphism") {
        GLMorphism m = build_gl_morphism(s.gen, s.frozen_letters, s.eta, s.potential,
                                         s.potential_frozen, s.dimension, s.truncation);
        ordered_json gamma = ordered_json::array();
        for (const auto& [id, val] : m.gamma) {
            ordered_json row;
            row["letter"] = m.source.gen.letter(id).name;
            row["value"] = te_json(m.target.gen, val);
            gamma.push_back(row);
        }
        values["gamma"] = gamma;
        values["chain_map"] = true;  // build verifies or throws NotChainMap
        ordered_json st = ordered_json::array();
        for (const auto& [id, val] : m.source.diff) {
            ordered_json row;
            row["letter"] = m.source.gen.letter(id).name;
            row["value"] = te_json(m.source.gen, val);
            st.push_back(row);
        }
        values["source_differential"] = st;
    }
    else
        throw EngineError("Schema", "unknown task " + s.task);
    return values;
}

}  // namespace

SessionDocument parse_document(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    }
    catch (const json::exception& e) {
        throw EngineError("Schema", e.what());
    }
    try {
        return parse_document_json(doc);
    }
    catch (const json::exception& e) {
        throw EngineError("Schema", e.what());
    }
}

RunResult run_document(const std::string& json_text)
{
    ordered_json report;
    report["engine_version"] = kEngineVersion;
    RunResult out;
    SessionDocument s;
    try {
        s = parse_document(json_text);
    }
    catch (const EngineError& e) {
        report["task"] = "";
        report["status"] = "schema_error";
        report["witnesses"] = ordered_json::array({e.what()});
        out.report_json = report.dump(2) + "\n";
        out.exit_code = 2;
        return out;
    }
    report["task"] = s.task;
    try {
        report["values"] = run_task(s);
        bool flag = false;
        if (report["values"].contains("d_squared_zero") &&
            !report["values"]["d_squared_zero"].get<bool>())
            flag = true;
        report["status"] = flag ? "violated" : "ok";
        report["witnesses"] = ordered_json::array();
        out.exit_code = flag ? 1 : 0;
    }
    catch (const EngineError& e) {
        if (e.kind() == "Schema") {
            report["status"] = "schema_error";
            out.exit_code = 2;
        }
        else {
            report["status"] = "violated";
            out.exit_code = 1;
        }
        report["witnesses"] = ordered_json::array({e.what()});
    }
    out.report_json = report.dump(2) + "\n";
    return out;
}

std::string schema_text()
{
    ordered_json s;
    s["description"] =
        "One task per document. Exact scalars are integers or \"p/q\" strings.";
    s["fields"] = {
        {"dimension", "integer d >= 2"},
        {"truncation", "tensor-length truncation N"},
        {"base",
         "array of components {name, basis (optional, default [\"1\"]), "
         "structure_constants[i][j][k] (optional for dim 1), trace[i]}"},
        {"frozen", "optional array of frozen component names"},
        {"generators",
         "array of letters {name, from, to, degree, left_action?, right_action?}; "
         "actions map a non-unit basis name to [[letter, coeff], ...]"},
        {"eta", "array of {first, second, coeff}"},
        {"potential", "array of {coeff, word: [letter names]}"},
        {"potential_frozen",
         "optional array of {coeff, word} over frozen letters and their duals "
         "\"<f>^\""},
        {"frozen_generators", "optional array of letter names forming F"},
        {"task",
         "string or {name, ...params}; one of: check_eta, casimir, "
         "build_preprojective, check_d_squared, h_dim (degree), jacobian, "
         "eta_f, gl_morphism"},
        {"seed", "optional integer for randomized identity checks"},
    };
    s["exit_codes"] = {{"0", "ok"}, {"1", "assumption violated"}, {"2", "schema error"}};
    return s.dump(2) + "\n";
}

}  // namespace qp
