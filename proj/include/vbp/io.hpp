#ifndef VBP_IO_HPP
#define VBP_IO_HPP

#include <nlohmann/json.hpp>

#include <string>

#include "vbp/profile.hpp"

namespace vbp::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Profile document: {format_version, states, outcome_dim, agents, social,
/// acts?}. Missing pieces/domain default to empty/full.
Profile parse_profile(const json& doc);
Profile parse_profile_text(const std::string& text);
Profile load_profile(const std::string& path);

json serialize_profile(const Profile& profile);

/// Acts document: {format_version, acts: [{name, outcomes}]}.
std::vector<NamedAct> parse_acts(const json& doc, std::size_t states, std::size_t outcome_dim);
std::vector<NamedAct> load_acts(const std::string& path, std::size_t states, std::size_t outcome_dim);

json serialize_act(const Act& act);
json serialize_prior(const Prior& prior);

} // namespace vbp::io

#endif
