#pragma once

#include <string>

#include <json.hpp>

#include "conceptkit/text.hpp"
#include "conceptkit/theorems.hpp"

namespace conceptkit {

inline nlohmann::json theorem_report_json(const TheoremReport& r) {
    nlohmann::json j{{"check", r.check},     {"k", r.k},
                     {"epsilon", r.epsilon}, {"trials", r.trials},
                     {"empirical", r.empirical}, {"analytic", r.analytic},
                     {"allowance", r.allowance}, {"pass", r.pass}};
    if (r.check == "cooccurrence-convergence") {
        j["delta"] = r.delta;
        j["n"] = r.n;
        j["n_star"] = r.n_star;
    }
    return j;
}

inline void save_theorem_report(const TheoremReport& r, const std::string& path) {
    write_text_file(path, theorem_report_json(r).dump(2) + "\n");
}

}  // namespace conceptkit
