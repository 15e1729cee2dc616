#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "stereoseld/augment.hpp"
#include "stereoseld/labels.hpp"

using namespace stereoseld;
using Catch::Approx;

TEST_CASE("fit on [1,2,3] has the closed-form statistics", "[labels]") {
    const std::vector<double> d = {1.0, 2.0, 3.0};
    const DistanceNormalizer dn = DistanceNormalizer::fit(d);
    CHECK(dn.mean_m() == Approx(2.0));
    CHECK(dn.std_m() == Approx(std::sqrt(2.0 / 3.0)));
    CHECK(dn.max_z() == Approx(1.224744871391589));
    CHECK(dn.normalize(1.0) == Approx(-1.0));
    CHECK(dn.normalize(2.0) == Approx(0.0).margin(1e-15));
    CHECK(dn.normalize(3.0) == 1.0);  // corpus max, exact
}

TEST_CASE("a symmetric corpus maps its extremes to +-1", "[labels]") {
    const std::vector<double> d = {0.5, 1.0, 1.5, 2.0, 2.5};
    const DistanceNormalizer dn = DistanceNormalizer::fit(d);
    CHECK(dn.normalize(2.5) == 1.0);
    CHECK(dn.normalize(0.5) == Approx(-1.0));
}

TEST_CASE("the full dataset distance range is accepted", "[labels]") {
    // Distances spanning [0.04, 7.64] m.
    std::vector<double> d;
    Rng rng(80);
    d.push_back(0.04);
    d.push_back(7.64);
    for (int i = 0; i < 500; ++i) d.push_back(rng.real_in(0.04, 7.64));
    const DistanceNormalizer dn = DistanceNormalizer::fit(d);
    CHECK(dn.normalize(7.64) == 1.0);
    CHECK(dn.normalize(0.04) >= -2.5);  // right-skew can undershoot -1
}

TEST_CASE("fit error paths", "[labels]") {
    REQUIRE_THROWS_WITH(DistanceNormalizer::fit(std::vector<double>{1.0}),
                        Catch::Matchers::ContainsSubstring("at least 2"));
    REQUIRE_THROWS_WITH(DistanceNormalizer::fit(std::vector<double>{2.0, 2.0, 2.0}),
                        Catch::Matchers::ContainsSubstring("zero variance"));
}

TEST_CASE("normalize is strictly increasing, denormalize is its inverse", "[labels][property]") {
    Rng rng(81);
    std::vector<double> corpus;
    for (int i = 0; i < 200; ++i) corpus.push_back(rng.real_in(0.04, 7.64));
    const DistanceNormalizer dn = DistanceNormalizer::fit(corpus);

    CHECK(dn.denormalize(0.0) == Approx(dn.mean_m()));
    const double corpus_max = *std::max_element(corpus.begin(), corpus.end());
    CHECK(dn.denormalize(1.0) == Approx(corpus_max).epsilon(1e-12));

    double prev = dn.normalize(0.01);
    for (double d = 0.02; d < 10.0; d += 0.01) {
        const double cur = dn.normalize(d);
        REQUIRE(cur > prev);
        prev = cur;
    }
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.real_in(0.01, 20.0);
        REQUIRE(std::abs(dn.denormalize(dn.normalize(d)) - d) < 1e-9);
    }
}

TEST_CASE("absmax divide mode bounds the low end too", "[labels]") {
    const std::vector<double> d = {1.0, 1.1, 1.2, 9.0};  // left-heavy: min |z| > max z? no: skew
    const DistanceNormalizer mx = DistanceNormalizer::fit(d, DivideBy::max);
    const DistanceNormalizer ab = DistanceNormalizer::fit(d, DivideBy::absmax);
    CHECK(mx.normalize(9.0) == 1.0);
    for (double v : d) {
        CHECK(ab.normalize(v) >= -1.0);
        CHECK(ab.normalize(v) <= 1.0);
    }
}

TEST_CASE("sidecar round-trips the statistics", "[labels]") {
    testhelp::TempDir dir("sidecar");
    const DistanceNormalizer dn = DistanceNormalizer::fit(std::vector<double>{1.0, 2.0, 3.0});
    dn.save(dir.path / "norm.txt");
    const DistanceNormalizer back = DistanceNormalizer::load(dir.path / "norm.txt");
    CHECK(back.mean_m() == dn.mean_m());
    CHECK(back.std_m() == dn.std_m());
    CHECK(back.max_z() == dn.max_z());

    testhelp::write_text(dir.path / "broken.txt", "mean=1\nstd=2\n");
    REQUIRE_THROWS_WITH(DistanceNormalizer::load(dir.path / "broken.txt"),
                        Catch::Matchers::ContainsSubstring("max_z"));
}

namespace {

DistanceNormalizer fixture_normalizer() {
    return DistanceNormalizer::fit(std::vector<double>{1.0, 2.0, 3.0});
}

}  // namespace

TEST_CASE("encode_targets places axis-aligned directions", "[labels]") {
    const DistanceNormalizer dn = fixture_normalizer();
    EventList events;
    events.entries = {
        {0, 0, 0, 0.0, 0.0, 2.0},    // front, at the mean distance
        {1, 1, 0, 90.0, 0.0, 3.0},   // left
        {2, 2, 0, 0.0, 90.0, 1.0},   // up
    };
    const TargetEncoding enc = encode_targets(events, dn);
    REQUIRE(enc.tensor.shape == std::vector<std::size_t>{50, 3, 13, 4});
    CHECK(enc.dropped == 0);

    CHECK(enc.tensor.at4(0, 0, 0, 0) == 1.0f);
    CHECK(enc.tensor.at4(0, 0, 0, 1) == 0.0f);
    CHECK(enc.tensor.at4(0, 0, 0, 2) == 0.0f);
    CHECK(enc.tensor.at4(0, 0, 0, 3) == Approx(0.0).margin(1e-7));

    CHECK(enc.tensor.at4(1, 0, 1, 0) == Approx(0.0).margin(1e-7));
    CHECK(enc.tensor.at4(1, 0, 1, 1) == Approx(1.0));
    CHECK(enc.tensor.at4(1, 0, 1, 3) == 1.0f);

    CHECK(enc.tensor.at4(2, 0, 2, 2) == Approx(1.0));
}

TEST_CASE("same-class simultaneous events fill distinct tracks by source id",
          "[labels][oracle]") {
    const DistanceNormalizer dn = fixture_normalizer();
    EventList events;
    events.entries = {
        {5, 4, 7, 10.0, 0.0, 1.0},  // higher source id listed first
        {5, 4, 2, -40.0, 0.0, 2.0},
    };
    const TargetEncoding enc = encode_targets(events, dn);

    // Track 0 belongs to source 2, track 1 to source 7 (ascending source id).
    CHECK(enc.tensor.at4(5, 0, 4, 1) ==
          Approx(std::sin(-40.0 * testhelp::kPi / 180.0)).margin(1e-6));
    CHECK(enc.tensor.at4(5, 1, 4, 1) == Approx(std::sin(10.0 * testhelp::kPi / 180.0)).margin(1e-6));
    for (std::size_t comp = 0; comp < 4; ++comp) CHECK(enc.tensor.at4(5, 2, 4, comp) == 0.0f);
}

TEST_CASE("excess simultaneous events are dropped and counted", "[labels]") {
    const DistanceNormalizer dn = fixture_normalizer();
    EventList events;
    for (int s = 0; s < 5; ++s) events.entries.push_back({0, 0, s, 10.0 * s, 0.0, 1.0});
    const TargetEncoding enc = encode_targets(events, dn);
    CHECK(enc.dropped == 2);
    // Out-of-range frames are dropped too.
    events.entries.push_back({99, 0, 0, 0.0, 0.0, 1.0});
    CHECK(encode_targets(events, dn).dropped == 3);
}

TEST_CASE("class ids out of range are an error", "[labels]") {
    const DistanceNormalizer dn = fixture_normalizer();
    EventList events;
    events.entries = {{0, 13, 0, 0.0, 0.0, 1.0}};
    REQUIRE_THROWS_WITH(encode_targets(events, dn),
                        Catch::Matchers::ContainsSubstring("class id 13"));
}

TEST_CASE("active directions are unit vectors", "[labels][property]") {
    const DistanceNormalizer dn = fixture_normalizer();
    Rng rng(82);
    EventList events;
    for (int i = 0; i < 120; ++i)
        events.entries.push_back({static_cast<long>(i % 50), i % 13, i / 50,
                                  rng.real_in(-180.0, 180.0), rng.real_in(-90.0, 90.0),
                                  rng.real_in(0.1, 5.0)});
    const TargetEncoding enc = encode_targets(events, dn);
    std::size_t active = 0;
    for (std::size_t f = 0; f < 50; ++f)
        for (std::size_t tr = 0; tr < 3; ++tr)
            for (std::size_t c = 0; c < 13; ++c) {
                const double x = enc.tensor.at4(f, tr, c, 0);
                const double y = enc.tensor.at4(f, tr, c, 1);
                const double z = enc.tensor.at4(f, tr, c, 2);
                const double norm = std::sqrt(x * x + y * y + z * z);
                if (norm > 0.0) {
                    REQUIRE(norm == Approx(1.0).margin(1e-6));
                    ++active;
                }
            }
    REQUIRE(active > 0);
}

TEST_CASE("the acs label transform flips exactly the y component", "[labels][property]") {
    const DistanceNormalizer dn = fixture_normalizer();
    Rng rng(83);
    EventList events;
    for (int i = 0; i < 60; ++i)
        events.entries.push_back({static_cast<long>(rng.int_in(0, 49)),
                                  static_cast<int>(rng.int_in(0, 12)), i,
                                  rng.real_in(-180.0, 180.0), rng.real_in(-90.0, 90.0),
                                  rng.real_in(0.1, 5.0)});

    EventList mirrored = events;
    for (auto& e : mirrored.entries) e.azimuth_deg = invert_azimuth(e.azimuth_deg);

    const TargetEncoding base = encode_targets(events, dn);
    const TargetEncoding flip = encode_targets(mirrored, dn);
    for (std::size_t f = 0; f < 50; ++f)
        for (std::size_t tr = 0; tr < 3; ++tr)
            for (std::size_t c = 0; c < 13; ++c) {
                CHECK(flip.tensor.at4(f, tr, c, 0) ==
                      Approx(base.tensor.at4(f, tr, c, 0)).margin(1e-6));
                CHECK(flip.tensor.at4(f, tr, c, 1) ==
                      Approx(-base.tensor.at4(f, tr, c, 1)).margin(1e-6));
                CHECK(flip.tensor.at4(f, tr, c, 2) ==
                      Approx(base.tensor.at4(f, tr, c, 2)).margin(1e-6));
                CHECK(flip.tensor.at4(f, tr, c, 3) ==
                      Approx(base.tensor.at4(f, tr, c, 3)).margin(1e-6));
            }
}
