#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "crnmem/polynomial.hpp"

using namespace crnmem;

namespace {

SparsePolynomial poly1(std::initializer_list<std::pair<std::uint32_t, std::int64_t>> terms) {
    SparsePolynomial p(1);
    for (auto [e, c] : terms) p.add_term({e}, c);
    return p;
}

ReactionNetwork random_network(std::mt19937_64& rng) {
    ReactionNetwork net;
    std::uniform_int_distribution<std::size_t> nspecies(1, 4);
    std::uniform_int_distribution<int> stoich(0, 2);
    std::uniform_int_distribution<std::int64_t> rate(1, 5);
    std::size_t n = nspecies(rng);
    for (std::size_t i = 0; i < n; ++i) net.species.push_back({i, "S" + std::to_string(i)});
    std::uniform_int_distribution<std::size_t> nreact(1, 6);
    std::size_t m = nreact(rng);
    for (std::size_t r = 0; r < m; ++r) {
        Reaction rx;
        rx.reactants.assign(n, 0);
        rx.products.assign(n, 0);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            rx.reactants[i] = static_cast<std::uint32_t>(stoich(rng));
            rx.products[i] = static_cast<std::uint32_t>(stoich(rng));
            any = any || rx.reactants[i] || rx.products[i];
        }
        if (!any) rx.products[0] = 1;
        rx.rate = rate(rng);
        net.reactions.push_back(rx);
    }
    return net;
}

}  // namespace

TEST_CASE("mass-action field for inflow plus quadratic decay", "[polynomial]") {
    auto net = parse_network("0 -> X : 2\n2X -> X : 1");
    auto field = derive_field(net);
    // f_X = 2 - x^2, expanded by hand from the two reactions
    auto expected = poly1({{0, 2}, {2, -1}});
    CHECK(field.components[0] == expected);
}

TEST_CASE("single decay term", "[polynomial]") {
    auto net = parse_network("X -> 0 : 1");
    auto field = derive_field(net);
    CHECK(field.components[0] == poly1({{1, -1}}));
}

TEST_CASE("bimolecular conversion", "[polynomial]") {
    auto net = parse_network("X + Y -> 2Y : 3");
    auto field = derive_field(net);
    SparsePolynomial fx(2), fy(2);
    fx.add_term({1, 1}, -3);  // -3xy
    fy.add_term({1, 1}, 3);   // +3xy
    CHECK(field.components[0] == fx);
    CHECK(field.components[1] == fy);
}

TEST_CASE("duplicate reactions merge additively", "[polynomial]") {
    auto field = derive_field(parse_network("X -> 0 : 1\nX -> 0 : 2"));
    CHECK(field.components[0] == poly1({{1, -3}}));  // rates add: f = -3x
}

TEST_CASE("driven species get the zero polynomial", "[polynomial]") {
    auto net = parse_network("C + X -> C + 2X : 1\ndriven C: (0,1)");
    auto field = derive_field(net);
    auto c_idx = net.find_species("C").value();
    auto x_idx = net.find_species("X").value();
    CHECK(field.components[c_idx].is_zero());
    CHECK_FALSE(field.components[x_idx].is_zero());
}

TEST_CASE("jacobian entries follow the power rule", "[polynomial]") {
    auto field = derive_field(parse_network("0 -> X : 2\n2X -> X : 1"));
    auto jac = derive_jacobian(field);
    CHECK(jac[0][0] == poly1({{1, -2}}));  // d(2-x^2)/dx = -2x

    auto field2 = derive_field(parse_network("X + Y -> 2Y : 3"));
    auto jac2 = derive_jacobian(field2);
    SparsePolynomial dxy(2);
    dxy.add_term({1, 0}, -3);  // d(-3xy)/dy = -3x
    CHECK(jac2[0][1] == dxy);

    auto zero_field = derive_field(parse_network("X -> X : 1"));
    auto zero_jac = derive_jacobian(zero_field);
    CHECK(zero_jac[0][0].is_zero());
}

TEST_CASE("field evaluation", "[polynomial]") {
    auto field = derive_field(parse_network("0 -> X : 2\n2X -> X : 1"));
    std::vector<double> at0{0.0};
    CHECK(field.eval(at0)[0] == 2.0);
    std::vector<double> atr2{std::sqrt(2.0)};
    CHECK(std::abs(field.eval(atr2)[0]) < 1e-12);

    auto field2 = derive_field(parse_network("X + Y -> 2Y : 3"));
    std::vector<double> at12{1.0, 2.0};
    auto v = field2.eval(at12);
    CHECK(v[0] == -6.0);
    CHECK(v[1] == 6.0);

    std::vector<double> bad{1.0};
    CHECK_THROWS(field2.eval(bad));
}

TEST_CASE("derived fields always have the kinetic property", "[polynomial]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto net = random_network(rng);
        auto field = derive_field(net);
        CHECK(field.has_kinetic_property());
    }
}

TEST_CASE("field derivation is additive over reaction lists", "[polynomial]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto net = random_network(rng);
        if (net.reactions.size() < 2) continue;
        std::size_t split = net.reactions.size() / 2;
        ReactionNetwork a = net, b = net;
        a.reactions.assign(net.reactions.begin(), net.reactions.begin() + split);
        b.reactions.assign(net.reactions.begin() + split, net.reactions.end());
        if (a.reactions.empty() || b.reactions.empty()) continue;
        auto fa = derive_field(a);
        auto fb = derive_field(b);
        auto fn = derive_field(net);
        for (std::size_t i = 0; i < fn.arity; ++i) {
            SparsePolynomial sum = fa.components[i];
            sum.add(fb.components[i]);
            CHECK(sum == fn.components[i]);
        }
    }
}

TEST_CASE("mass-conserving reactions contribute zero to the species sum", "[polynomial]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto net = random_network(rng);
        // force conservation: make total product stoichiometry match reactants
        for (auto& r : net.reactions) {
            std::uint32_t rs = 0, ps = 0;
            for (std::size_t i = 0; i < r.reactants.size(); ++i) {
                rs += r.reactants[i];
                ps += r.products[i];
            }
            if (rs == 0) {
                r.reactants[0] += 1;
                rs += 1;
            }
            while (ps < rs) {
                r.products[0] += 1;
                ++ps;
            }
            while (ps > rs) {
                for (std::size_t i = 0; i < r.products.size() && ps > rs; ++i)
                    while (r.products[i] > 0 && ps > rs) {
                        r.products[i] -= 1;
                        --ps;
                    }
            }
        }
        auto field = derive_field(net);
        SparsePolynomial total(field.arity);
        for (const auto& c : field.components) total.add(c);
        CHECK(total.is_zero());
    }
}

TEST_CASE("jacobian matches central finite differences", "[polynomial]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(0.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        auto net = random_network(rng);
        auto field = derive_field(net);
        auto jac = derive_jacobian(field);
        std::size_t n = field.arity;
        std::vector<double> x(n);
        for (auto& v : x) v = coord(rng);
        const double h = 1e-5;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                auto xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                double fd =
                    (field.components[i].eval(xp) - field.components[i].eval(xm)) / (2.0 * h);
                double an = jac[i][j].eval(x);
                double scale = std::max({1.0, std::abs(fd), std::abs(an)});
                CHECK(std::abs(fd - an) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("polynomial printing", "[polynomial]") {
    auto field = derive_field(parse_network("0 -> X : 2\n2X -> X : 1"));
    CHECK(field.components[0].str({"x"}) == "2 - x^2");
}
