#include "pwb/verify.hpp"

#include "json.hpp"

namespace pwb {

std::string to_json(const LemmaCheckReport& r) {
    nlohmann::json j;
    j["lemma_id"] = r.lemma_id;
    j["claim"] = r.claim;
    j["samples"] = r.samples;
    j["min_margin"] = r.min_margin;
    j["witness"] = r.witness.empty() ? nlohmann::json::object() : nlohmann::json::parse(r.witness);
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    return j.dump();
}

}  // namespace pwb
