#include <doctest.h>

#include <random>

#include "strata/consistency.hpp"
#include "strata/textio.hpp"
#include "support/fixtures.hpp"
#include "support/modelgen.hpp"
#include "support/oracles.hpp"

using namespace strata;
using strata::testing::make_demo;

TEST_CASE("deterministic_path") {
    LayeredModel demo = make_demo();
    SUBCASE("unique physical path") {
        auto path = deterministic_path(demo, Layer::Physical, "h1", "h2");
        REQUIRE(path.has_value());
        CHECK(path->vertices == std::vector<std::string>{"h1", "sw1", "h2"});
    }
    SUBCASE("identity path") {
        auto path = deterministic_path(demo, Layer::Physical, "h1", "h1");
        REQUIRE(path.has_value());
        CHECK(path->vertices == std::vector<std::string>{"h1"});
    }
    SUBCASE("blocked by exclusion") {
        Exclusions excluded;
        excluded.components.insert("sw1");
        CHECK_FALSE(deterministic_path(demo, Layer::Physical, "h1", "h2", excluded).has_value());
    }
    SUBCASE("excluded link") {
        Exclusions excluded;
        excluded.links.insert(LinkKey::make(Layer::Physical, "h1", "sw1"));
        CHECK_FALSE(deterministic_path(demo, Layer::Physical, "h1", "h2", excluded).has_value());
    }
    SUBCASE("wrong layer") {
        CHECK_THROWS_AS(deterministic_path(demo, Layer::Logical, "h1", "h2"), Error);
    }
    SUBCASE("matches brute force on random models") {
        std::mt19937_64 rng(99);
        strata::testing::GenLimits limits;
        limits.max_per_layer = 12;
        for (int trial = 0; trial < 30; ++trial) {
            LayeredModel m = strata::testing::random_model(rng, limits).build();
            for (Layer layer : kLayersBottomUp) {
                const auto& ids = m.components_on(layer);
                if (ids.size() < 2) continue;
                const std::string& src = ids.front();
                const std::string& dst = ids.back();
                auto brute = strata::testing::brute_shortest_lex(m, layer, src, dst, {});
                auto fast = deterministic_path(m, layer, src, dst);
                CHECK(fast.has_value() == brute.has_value());
                if (fast && brute) CHECK(fast->vertices == *brute);
            }
        }
    }
}

TEST_CASE("realize_link") {
    LayeredModel demo = make_demo();
    SUBCASE("service link realizes through both lower layers") {
        auto tree = realize_link(demo, Layer::Service, "cli", "srv");
        REQUIRE(tree.has_value());
        CHECK(tree->root.vertices == std::vector<std::string>{"cli", "srv"});
        REQUIRE(tree->children.size() == 1);
        const RealizationTree& logical = tree->children[0];
        CHECK(logical.root.vertices == std::vector<std::string>{"vm1", "net1", "vm2"});
        REQUIRE(logical.children.size() == 2);
        CHECK(logical.children[0].root.vertices == std::vector<std::string>{"h1", "sw1"});
        CHECK(logical.children[1].root.vertices == std::vector<std::string>{"sw1", "h2"});
        CHECK(logical.children[0].children.empty());
    }
    SUBCASE("physical link realizes itself") {
        auto tree = realize_link(demo, Layer::Physical, "h1", "sw1");
        REQUIRE(tree.has_value());
        CHECK(tree->root.vertices == std::vector<std::string>{"h1", "sw1"});
        CHECK(tree->children.empty());
    }
    SUBCASE("excluding net1 kills the only realization") {
        Exclusions excluded;
        excluded.components.insert("net1");
        CHECK_FALSE(realize_link(demo, Layer::Service, "cli", "srv", excluded).has_value());
    }
    SUBCASE("not a link") {
        CHECK_THROWS_AS(realize_link(demo, Layer::Physical, "h1", "h2"), Error);
    }
}

TEST_CASE("check_accessibility") {
    LayeredModel demo = make_demo();
    const Requirement& r1 = demo.requirements()[0];

    SUBCASE("demo r1 passes with the unique tree") {
        AccessibilityResult result = check_accessibility(demo, r1);
        CHECK(result.pass);
        REQUIRE(result.evidence.has_value());
        CHECK(result.evidence->root.vertices ==
              std::vector<std::string>{"user_portal", "data_service"});
        std::string rendered = render_realization_tree(*result.evidence);
        CHECK(rendered ==
              "[functional] user_portal data_service\n"
              "  [service] cli srv\n"
              "    [logical] vm1 net1 vm2\n"
              "      [physical] h1 sw1\n"
              "      [physical] sw1 h2\n");
    }
    SUBCASE("removing the vm1-net1 link fails at the service hop") {
        std::vector<Link> links;
        for (const Link& l : demo.links()) {
            if (!(l.layer == Layer::Logical && l.a == "net1" && l.b == "vm1")) {
                links.push_back(l);
            }
        }
        REQUIRE(links.size() == demo.links().size() - 1);
        LayeredModel broken = build_model("demo", demo.components(), std::move(links),
                                          demo.projections(), demo.requirements());
        AccessibilityResult result = check_accessibility(broken, r1);
        CHECK_FALSE(result.pass);
        CHECK(result.failure == "link:functional:data_service-user_portal has no realization");
    }
    SUBCASE("self requirement passes with a single-vertex witness") {
        Requirement self{"rs", "user_portal", "user_portal", Layer::Functional, {}, {}};
        AccessibilityResult result = check_accessibility(demo, self);
        CHECK(result.pass);
        CHECK(result.evidence->root.vertices == std::vector<std::string>{"user_portal"});
        CHECK(result.evidence->children.empty());
    }
    SUBCASE("monotone under additions") {
        std::mt19937_64 rng(4242);
        strata::testing::GenLimits limits;
        limits.max_per_layer = 6;
        limits.link_density = 0.35;
        for (int trial = 0; trial < 40; ++trial) {
            auto gen = strata::testing::random_model(rng, limits);
            LayeredModel base = gen.build();
            if (base.requirements().empty()) continue;
            const Requirement& r = base.requirements()[0];
            bool before = check_accessibility(base, r).pass;
            if (!before) continue;

            // Add a component, a link, and a projection; the check must not flip.
            auto grown = gen;
            grown.components.push_back({"extra0", r.layer, {}, {}, "", ""});
            if (r.layer != Layer::Physical) {
                grown.projections.push_back({"extra0", base.components_on(layer_below(r.layer)).front()});
            }
            const auto& pool = base.components_on(Layer::Physical);
            bool added_link = false;
            for (std::size_t i = 0; i < pool.size() && !added_link; ++i) {
                for (std::size_t j = i + 1; j < pool.size() && !added_link; ++j) {
                    LinkKey key = LinkKey::make(Layer::Physical, pool[i], pool[j]);
                    if (!base.has_link(key)) {
                        grown.links.push_back(Link{Layer::Physical, pool[i], pool[j], {}});
                        added_link = true;
                    }
                }
            }
            LayeredModel bigger = grown.build();
            CHECK(check_accessibility(bigger, r).pass);
        }
    }
}

TEST_CASE("check_compatibility") {
    auto model_with = [](std::set<std::string> pa, std::set<std::string> pb) {
        std::vector<Component> comps = {{"a", Layer::Physical, std::move(pa), {}, "", ""},
                                        {"b", Layer::Physical, std::move(pb), {}, "", ""}};
        std::vector<Link> links = {{Layer::Physical, "a", "b", {}}};
        return build_model("m", std::move(comps), std::move(links), {}, {});
    };
    SUBCASE("overlap is clean") {
        CHECK(check_compatibility(model_with({"http", "dns"}, {"http"})).empty());
    }
    SUBCASE("disjoint sets are incompatible") {
        auto findings = check_compatibility(model_with({"ntp"}, {"dns"}));
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].kind == CompatibilityKind::Incompatible);
    }
    SUBCASE("unspecified endpoint warns") {
        auto findings = check_compatibility(model_with({}, {"dns"}));
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].kind == CompatibilityKind::UnspecifiedProtocols);
    }
}

TEST_CASE("check_cardinality_transparency") {
    LayeredModel demo = make_demo();
    SUBCASE("absent minima pass vacuously") {
        TransparencyResult result = check_cardinality_transparency(demo, demo.requirements()[0]);
        CHECK_FALSE(result.replicas.has_value());
        CHECK_FALSE(result.locations.has_value());
        CHECK(result.pass());
    }
    SUBCASE("single image fails min_replicas=2") {
        Requirement r{"rr", "user_portal", "data_service", Layer::Functional, 2, {}};
        TransparencyResult result = check_cardinality_transparency(demo, r);
        REQUIRE(result.replicas.has_value());
        CHECK(result.replicas->actual == 1);  // data_service -> srv -> vm2 -> h2
        CHECK_FALSE(result.replicas->pass);
    }
    SUBCASE("clustered destination passes") {
        auto comps = demo.components();
        comps.push_back({"vm3", Layer::Logical, {}, {}, "", ""});
        comps.push_back({"h3", Layer::Physical, {}, {}, "", ""});
        auto projections = demo.projections();
        projections.push_back({"srv", "vm3"});
        projections.push_back({"vm3", "h3"});
        LayeredModel grown = build_model("demo", std::move(comps), demo.links(),
                                         std::move(projections), demo.requirements());
        Requirement r{"rr", "user_portal", "data_service", Layer::Functional, 2, 2};
        TransparencyResult result = check_cardinality_transparency(grown, r);
        CHECK(result.replicas->actual == 2);
        CHECK(result.replicas->pass);
        // h2 and h3 carry no location tags: each counts as a distinct site.
        CHECK(result.locations->actual == 2);
        CHECK(result.locations->pass);
    }
}

TEST_CASE("check_openness") {
    LayeredModel demo = make_demo();
    auto flagged = check_openness(demo);
    CHECK(flagged.size() == 10);  // the demo declares no standards anywhere
    CHECK(flagged.front() == "cli");

    auto comps = demo.components();
    for (Component& c : comps) c.standards = {"iso"};
    LayeredModel open_model =
        build_model("demo", std::move(comps), demo.links(), demo.projections(),
                    demo.requirements());
    CHECK(check_openness(open_model).empty());
}

TEST_CASE("consistency_check verdicts") {
    SUBCASE("demo is inconsistent: accessibility passes but SPOFs exist") {
        LayeredModel demo = make_demo();
        ConsistencyReport report = consistency_check(demo);
        CHECK(report.structure_ok);
        REQUIRE(report.requirements.size() == 1);
        CHECK(report.requirements[0].accessibility.pass);
        CHECK(report.requirements[0].spofs_checked);
        CHECK(report.requirements[0].spofs.size() == 13);
        CHECK(report.verdict == Verdict::Inconsistent);
    }
    SUBCASE("twinchain fixture passes failure transparency") {
        LayeredModel twin = strata::testing::load_fixture("twinchain.strata");
        ConsistencyReport report = consistency_check(twin);
        REQUIRE(report.requirements.size() == 1);
        CHECK(report.requirements[0].accessibility.pass);
        CHECK(report.requirements[0].spofs.empty());
        CHECK(report.verdict == Verdict::ConsistentWithWarnings);  // openness flags remain
    }
    SUBCASE("structurally invalid models skip semantic checks") {
        std::vector<Component> comps = {{"f", Layer::Functional, {}, {}, "", ""},
                                        {"p", Layer::Physical, {}, {}, "", ""}};
        LayeredModel invalid = build_model("bad", std::move(comps), {}, {}, {});
        ConsistencyReport report = consistency_check(invalid);
        CHECK_FALSE(report.structure_ok);
        CHECK(report.requirements.empty());
        CHECK(report.compatibility.empty());
        CHECK(report.verdict == Verdict::Inconsistent);
    }
}
