#include "vbp/io.hpp"

#include <fstream>

namespace vbp::io {
namespace {

std::vector<double> parse_vector(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw ParseError(std::string(what) + " must contain only numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

PerceptionFunction parse_perception(const json& j) {
    std::vector<PerceptionFunction::Piece> pieces;
    if (j.contains("pieces")) {
        for (const auto& pj : j.at("pieces"))
            pieces.push_back({parse_vector(pj.at("g"), "piece gradient"), pj.at("h").get<double>()});
    }
    Polyhedron domain;
    if (j.contains("domain")) {
        for (const auto& rj : j.at("domain"))
            domain.add_row({parse_vector(rj.at("a"), "domain row"), rj.at("b").get<double>()});
    }
    return PerceptionFunction(std::move(pieces), std::move(domain));
}

Preference parse_preference(const json& j) {
    const json& uj = j.at("utility");
    AffineUtility u(parse_vector(uj.at("gradient"), "utility gradient"),
                    uj.value("intercept", 0.0));
    PerceptionFunction c =
        j.contains("perception") ? parse_perception(j.at("perception")) : PerceptionFunction{};
    return Preference{std::move(u), std::move(c)};
}

Act parse_act_outcomes(const json& j) {
    std::vector<std::vector<double>> outcomes;
    for (const auto& oj : j) outcomes.push_back(parse_vector(oj, "act outcome"));
    return Act(std::move(outcomes));
}

json serialize_perception(const PerceptionFunction& c) {
    json out = json::object();
    json pieces = json::array();
    for (const auto& piece : c.pieces()) pieces.push_back({{"g", piece.gradient}, {"h", piece.offset}});
    out["pieces"] = std::move(pieces);
    json domain = json::array();
    for (const auto& row : c.domain().rows()) domain.push_back({{"a", row.normal}, {"b", row.bound}});
    out["domain"] = std::move(domain);
    return out;
}

json serialize_preference(const Preference& pref) {
    return json{{"utility", {{"gradient", pref.utility.gradient()}, {"intercept", pref.utility.intercept()}}},
                {"perception", serialize_perception(pref.perception)}};
}

} // namespace

namespace {

// Structural width checks so schema errors surface at parse time with a
// document-level message, before validation ever runs.
void check_widths(const Profile& profile, const Preference& pref, const std::string& who) {
    if (pref.utility.gradient().size() != profile.outcome_dim)
        throw ParseError("utility gradient width does not match outcome_dim for " + who);
    for (const auto& piece : pref.perception.pieces())
        if (piece.gradient.size() != profile.num_states())
            throw ParseError("perception piece width does not match state count for " + who);
    for (const auto& row : pref.perception.domain().rows())
        if (row.normal.size() != profile.num_states())
            throw ParseError("domain row width does not match state count for " + who);
}

} // namespace

Profile parse_profile(const json& doc) {
    try {
        if (!doc.contains("format_version")) throw ParseError("missing format_version");
        if (doc.at("format_version") != 1) throw ParseError("unsupported format_version");
        Profile profile;
        for (const auto& s : doc.at("states")) profile.states.push_back(s.get<std::string>());
        profile.outcome_dim = doc.at("outcome_dim").get<std::size_t>();
        for (const auto& aj : doc.at("agents")) profile.agents.push_back(parse_preference(aj));
        profile.social = parse_preference(doc.at("social"));
        check_widths(profile, profile.social, "social");
        for (std::size_t i = 0; i < profile.num_agents(); ++i)
            check_widths(profile, profile.agents[i], "agent " + std::to_string(i + 1));
        if (doc.contains("acts"))
            for (const auto& actj : doc.at("acts"))
                profile.acts.push_back({actj.at("name").get<std::string>(),
                                        parse_act_outcomes(actj.at("outcomes"))});
        return profile;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed profile document: ") + e.what());
    }
}

Profile parse_profile_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_profile(doc);
}

Profile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_profile_text(text);
}

json serialize_profile(const Profile& profile) {
    json out;
    out["format_version"] = 1;
    out["states"] = profile.states;
    out["outcome_dim"] = profile.outcome_dim;
    json agents = json::array();
    for (const Preference& a : profile.agents) agents.push_back(serialize_preference(a));
    out["agents"] = std::move(agents);
    out["social"] = serialize_preference(profile.social);
    if (!profile.acts.empty()) {
        json acts = json::array();
        for (const NamedAct& named : profile.acts)
            acts.push_back({{"name", named.name}, {"outcomes", named.act.outcomes()}});
        out["acts"] = std::move(acts);
    }
    return out;
}

std::vector<NamedAct> parse_acts(const json& doc, std::size_t states, std::size_t outcome_dim) {
    try {
        if (!doc.contains("format_version")) throw ParseError("missing format_version");
        if (doc.at("format_version") != 1) throw ParseError("unsupported format_version");
        std::vector<NamedAct> acts;
        for (const auto& actj : doc.at("acts")) {
            NamedAct named{actj.at("name").get<std::string>(),
                           parse_act_outcomes(actj.at("outcomes"))};
            if (named.act.states() != states)
                throw ParseError("act '" + named.name + "' does not cover every state");
            for (std::size_t s = 0; s < states; ++s)
                if (named.act.outcome(s).size() != outcome_dim)
                    throw ParseError("act '" + named.name + "' has an outcome of wrong dimension");
            acts.push_back(std::move(named));
        }
        return acts;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed acts document: ") + e.what());
    }
}

std::vector<NamedAct> load_acts(const std::string& path, std::size_t states, std::size_t outcome_dim) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open acts file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_acts(doc, states, outcome_dim);
}

json serialize_act(const Act& act) { return json(act.outcomes()); }

json serialize_prior(const Prior& prior) { return json(prior.weights()); }

} // namespace vbp::io
