#pragma once

// Exact checks of the displayed identities against the engine.
// Each entry carries the engine's value, the displayed value and a verdict.

#include <string>
#include <vector>

#include <json.hpp>

namespace heisenberg {

struct IdentityAudit {
    std::string id;
    std::string statement;
    std::string engine;
    std::string displayed;
    bool consistent = false;
    nlohmann::json details = nlohmann::json::object();
};

IdentityAudit audit_brackets(std::size_t n = 2);
IdentityAudit audit_sublaplacian_displays();
IdentityAudit audit_laplacian_expansion();
IdentityAudit audit_factorization();
IdentityAudit audit_z_bracket();
IdentityAudit audit_fock_normalization(unsigned max_n = 6);
IdentityAudit audit_dilation_sign();
IdentityAudit audit_representation_convention();

std::vector<IdentityAudit> audit_identities();

nlohmann::json to_json(const IdentityAudit& a);

}  // namespace heisenberg
