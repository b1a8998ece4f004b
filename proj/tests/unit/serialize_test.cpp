#include <gtest/gtest.h>

#include <dcroots/oracle.hpp>
#include <dcroots/serialize.hpp>

using namespace dcroots;

TEST(Serialize, CoefficientVectorRoundTrip) {
    const CoefficientVector c({0.3, 0.1, 2.0});
    const Json j = to_json(c);
    EXPECT_EQ(j.at("entries").size(), 3u);
    EXPECT_DOUBLE_EQ(j.at("gamma").get<double>(), c.gamma());
    const auto back = coefficient_vector_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.vec(), c.vec());
    EXPECT_EQ(back.gamma(), c.gamma());
}

TEST(Serialize, MultisetAndMatrix) {
    const DMultiset d({0.5, 1.0, 3.0}, {2, 1, 4});
    const auto d2 = multiset_from_json(Json::parse(to_json(d).dump()));
    EXPECT_EQ(d2.values(), d.values());
    EXPECT_EQ(d2.mults(), d.mults());

    const DCMatrix m({1.0, 2.0, 3.0}, {0.5, 0.25, 4.0}, {2, 0, 1});
    const Json jm = to_json(m);
    EXPECT_EQ(jm.at("perm").get<std::vector<std::size_t>>(), (std::vector<std::size_t>{2, 0, 1}));
    const auto m2 = matrix_from_json(Json::parse(jm.dump()));
    EXPECT_EQ(m2.a(), m.a());
    EXPECT_EQ(m2.b(), m.b());
    EXPECT_EQ(m2.perm(), m.perm());
    const auto m3 = matrix_from_json(Json::parse(R"({"a":[1,2],"b":[3,4]})"));
    EXPECT_EQ(m3.perm(), (std::vector<std::size_t>{1, 0}));
}

TEST(Serialize, CountReport) {
    const CountReport r = ideal_counts(8, 0.5);
    const Json j = to_json(r);
    EXPECT_EQ(j.at("counts").at("plus").get<int>(), 3);
    EXPECT_EQ(j.at("counts").at("bar").get<int>(), 3);
    EXPECT_EQ(j.at("counts").at("minus").get<int>(), 5);
    EXPECT_EQ(j.at("counts").at("zero").get<int>(), 0);
    EXPECT_EQ(j.at("method").get<std::string>(), "closed_form");
    const auto r2 = count_report_from_json(Json::parse(j.dump()));
    EXPECT_EQ(r2.nu_plus, 3);
    EXPECT_EQ(r2.method, CountMethod::closed_form);
}

TEST(Serialize, RootSetAndRegion) {
    const Json j = to_json(ideal_roots(4, 0.5));
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 4u);
    for (const auto& e : j) {
        EXPECT_TRUE(e.contains("re"));
        EXPECT_TRUE(e.contains("im"));
        EXPECT_TRUE(e.contains("residual"));
    }
    const Json b = to_json(RegionSpec::box(0.3, 0.01));
    EXPECT_EQ(b.at("kind").get<std::string>(), "box");
    EXPECT_DOUBLE_EQ(b.at("params").at("x_min").get<double>(), -0.1);
}

TEST(Serialize, PathPlan) {
    const auto plan = plan_full_path(from_multiset(DMultiset({1.0, 2.0, 16.0}, {2, 1, 1})));
    const Json j = to_json(plan);
    EXPECT_EQ(j.at("p").get<std::size_t>(), plan.p());
    EXPECT_EQ(j.at("segments").at(0).at("case").get<std::string>(), "I");
    EXPECT_DOUBLE_EQ(j.at("T").get<double>(), plan.T);
}

TEST(Serialize, MalformedInput) {
    EXPECT_THROW(coefficient_vector_from_json(Json::parse(R"({"values":[1]})")), DomainError);
    EXPECT_THROW(coefficient_vector_from_json(Json::parse(R"({"entries":["x"]})")), DomainError);
    EXPECT_THROW(coefficient_vector_from_json(Json::parse(R"({"entries":[1,-1]})")), DomainError);
    EXPECT_THROW(multiset_from_json(Json::parse(R"({"values":[2,1],"mults":[1,1]})")), DomainError);
    EXPECT_THROW(count_report_from_json(Json::parse(R"({"method":"contour"})")), DomainError);
    EXPECT_THROW(count_report_from_json(Json::parse(R"({"counts":{"minus":1}})")), DomainError);
}
