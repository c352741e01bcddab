#pragma once

#include "strata/model.hpp"

namespace strata::testing {

/// The demo topology assembled by hand, independent of the text parser.
inline LayeredModel make_demo() {
    std::vector<Component> components;
    auto add = [&components](const char* id, Layer layer) {
        Component c;
        c.id = id;
        c.layer = layer;
        components.push_back(std::move(c));
    };
    add("h1", Layer::Physical);
    add("h2", Layer::Physical);
    add("sw1", Layer::Physical);
    add("vm1", Layer::Logical);
    add("vm2", Layer::Logical);
    add("net1", Layer::Logical);
    add("cli", Layer::Service);
    add("srv", Layer::Service);
    add("user_portal", Layer::Functional);
    add("data_service", Layer::Functional);

    std::vector<Link> links = {
        {Layer::Physical, "h1", "sw1", {}},
        {Layer::Physical, "h2", "sw1", {}},
        {Layer::Logical, "vm1", "net1", {}},
        {Layer::Logical, "vm2", "net1", {}},
        {Layer::Service, "cli", "srv", {}},
        {Layer::Functional, "user_portal", "data_service", {}},
    };
    std::vector<Projection> projections = {
        {"vm1", "h1"}, {"vm2", "h2"}, {"net1", "sw1"},
        {"cli", "vm1"}, {"srv", "vm2"},
        {"user_portal", "cli"}, {"data_service", "srv"},
    };
    std::vector<Requirement> requirements = {
        {"r1", "user_portal", "data_service", Layer::Functional, {}, {}},
    };
    return build_model("demo", std::move(components), std::move(links), std::move(projections),
                       std::move(requirements));
}

}  // namespace strata::testing
