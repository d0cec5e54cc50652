#include <gtest/gtest.h>

#include <future>

#include <httplib.h>

#include "mfrac_app/json_io.hpp"
#include "mfrac_app/server.hpp"

namespace {

using namespace mfrac::app;

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ServerOptions opts;
    opts.port = 0;
    opts.static_dir = MFRAC_TEST_STATIC_DIR;
    server_ = std::make_unique<Server>(opts);
    port_ = server_->start();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(120);
    return c;
  }

  std::unique_ptr<Server> server_;
  int port_ = 0;
};

TEST_F(ServerTest, HealthOverSocket) {
  auto res = client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["status"], "ok");
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(res->get_header_value("Server-Timing").rfind("app;dur=", 0), 0u);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
}

TEST_F(ServerTest, PreflightAndErrors) {
  auto c = client();
  auto pre = c.Options("/api/simulate");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);

  auto bad = c.Post("/api/simulate", R"({"hurst_expr": "sin("})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(Json::parse(bad->body)["error"]["code"], "parse_error");
  EXPECT_EQ(bad->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServerTest, ServesStaticIndex) {
  auto res = client().Get("/");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->body.find("<html"), std::string::npos);
}

TEST_F(ServerTest, ConcurrentDuplicatesReturnIdenticalBodies) {
  const std::string body =
      R"j({"kind":"ghbmp","hurst_expr":"0.4 - 0.25*sin(6*pi*t)","points":513,"trunc_J":9,"seed":21})j";
  std::vector<std::future<std::string>> replies;
  for (int i = 0; i < 6; ++i) {
    replies.push_back(std::async(std::launch::async, [&] {
      auto c = client();
      auto res = c.Post("/api/simulate", body, "application/json");
      return res && res->status == 200 ? res->body : std::string("failed");
    }));
  }
  const std::string first = replies.front().get();
  EXPECT_NE(first, "failed");
  for (std::size_t i = 1; i < replies.size(); ++i) EXPECT_EQ(replies[i].get(), first);
}

}  // namespace
