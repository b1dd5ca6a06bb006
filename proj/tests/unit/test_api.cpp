#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>

#include "eqproof/http.hpp"
#include "support/api_fixtures.hpp"

using namespace eqproof;

namespace {

const std::filesystem::path kFixtures = std::filesystem::path(EQPROOF_GOLDEN_DIR) / "api";

struct Service : ::testing::Test {
    QuestionBank bank = testgen::fixture_bank(kFixtures);
    MemorySessionStore store;
    Tutor tutor{bank, store};
    ApiService api{tutor};

    ApiResponse post(const std::string& path, const Json& body) { return api.handle("POST", path, {}, body.dump()); }
};

}  // namespace

class GoldenFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenFixture, Replays) {
    const auto bank = testgen::fixture_bank(kFixtures);
    const auto r = testgen::run_fixture(kFixtures / GetParam(), bank);
    EXPECT_GT(r.requests, 0u);
    for (const auto& f : r.failures) ADD_FAILURE() << f;
}

INSTANTIATE_TEST_SUITE_P(Api, GoldenFixture,
                         ::testing::Values("session.json", "rules.json", "questions.json", "parse.json", "step.json",
                                           "hint.json", "solution.json", "reset.json", "progress.json",
                                           "generate_disabled.json", "generate.json", "routing.json"),
                         [](const auto& info) { return info.param.substr(0, info.param.find('.')); });

TEST(GoldenFixtures, EveryFileIsListed) {
    EXPECT_EQ(testgen::fixture_files(kFixtures).size(), 12u);
}

TEST_F(Service, HintEscalationOnDistributivityQuestion) {
    const std::string s = post("/api/session", Json::object()).body["session"];
    const auto first = post("/api/attempt/q9/hint", {{"session", s}});
    ASSERT_EQ(first.status, 200);
    EXPECT_EQ(first.body["level"], 1);
    EXPECT_EQ(first.body["rule"], "Distributivity");
    EXPECT_FALSE(first.body.contains("expression"));
    const auto second = post("/api/attempt/q9/hint", {{"session", s}});
    EXPECT_EQ(second.body["level"], 2);
    EXPECT_EQ(second.body["expression"], "p∨q∧r");
    EXPECT_EQ(normalize(parse(second.body["expression"].get<std::string>())), normalize(parse("p∨(q∧r)")));
}

TEST_F(Service, InvalidStepCarriesNoRuleInformation) {
    const std::string s = post("/api/session", Json::object()).body["session"];
    const auto r = post("/api/attempt/q6/step", {{"session", s}, {"rule", "Commutativity"}, {"expression", "¬(p∨q)"}});
    EXPECT_EQ(r.body["verdict"], "invalid");
    const std::string dumped = r.body.dump();
    for (RuleId id : kAllRules) EXPECT_EQ(dumped.find(rule_name(id)), std::string::npos);
}

TEST_F(Service, DisplayNamesAreAccepted) {
    const std::string s = post("/api/session", Json::object()).body["session"];
    const auto r = post("/api/attempt/q6/step", {{"session", s}, {"rule", "De Morgan's Law"}, {"expression", "¬(p∨q)"}});
    EXPECT_EQ(r.body["verdict"], "valid");
    EXPECT_EQ(r.body["completed"], true);
}

TEST_F(Service, ErrorEnvelope) {
    const auto r = api.handle("GET", "/api/progress", {{"session", "zzz"}}, "");
    EXPECT_EQ(r.status, 404);
    ASSERT_TRUE(r.body.contains("error"));
    EXPECT_EQ(r.body["error"]["code"], "not_found");
    EXPECT_TRUE(r.body["error"]["message"].is_string());
    EXPECT_TRUE(r.body["error"].contains("detail"));
}

TEST_F(Service, OverHttp) {
    HttpServer server(api);
    const int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::jthread loop([&] { server.listen(); });
    for (int i = 0; i < 200 && !server.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));

    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/api/session", "", "application/json");
    ASSERT_TRUE(created);
    EXPECT_EQ(created->status, 201);
    const std::string token = Json::parse(created->body)["session"];

    auto step = client.Post("/api/attempt/q1/step",
                            Json{{"session", token}, {"rule", "DoubleNegation"}, {"expression", "p"}}.dump(),
                            "application/json");
    ASSERT_TRUE(step);
    EXPECT_EQ(Json::parse(step->body)["completed"], true);

    auto progress = client.Get("/api/progress?session=" + token);
    ASSERT_TRUE(progress);
    EXPECT_EQ(progress->status, 200);
    EXPECT_EQ(Json::parse(progress->body)["levels"]["novice"]["completed"], 1);

    auto missing = client.Get("/api/elsewhere");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    server.stop();
}
