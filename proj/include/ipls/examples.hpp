#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipls/model.hpp"

namespace ipls {

struct PaperExample {
    std::string id;
    std::string description;
    ParametricSystem system;
    double delta = 0.0;  // tolerance actually used (0 when not applicable)
};

// Registry ids: ex0, ex1, ex2, ex3, okumura, ac_circuit, frame.
std::vector<std::string> example_ids();

// delta applies to ex2 (default 0.5), okumura (0.3), ac_circuit (0.25) and
// frame (0.5); it is ignored for the fixed systems.
PaperExample build_example(const std::string& id, std::optional<double> delta = std::nullopt);

}  // namespace ipls
