#pragma once

#include "trop/space.hpp"

#include <memory>
#include <string>
#include <vector>

namespace trop {

struct Check {
    std::string fixture, name;
    bool ok = false;
    std::string detail;
};

struct Fixture {
    std::string name;
    std::shared_ptr<TropicalSpace> X;
    bool pd = false;  // Poincare duality expected (compact manifolds, matroidal fans)
};

// everything built by the generators; `heavy` adds the quartic surface
std::vector<Fixture> standard_fixtures(bool heavy);

// validation, balancing, d^2 = 0, closed fundamental chain; for compact spaces also cellular/simplicial
// agreement, wave chain-map property and the lift identity; Poincare duality when `pd`
std::vector<Check> verify_space(const std::string& name, const TropicalSpace& X, bool pd);

}  // namespace trop
