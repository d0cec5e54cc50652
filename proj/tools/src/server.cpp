#include "mfrac_app/server.hpp"

#include <cstdio>
#include <thread>

#include <httplib.h>

#include "mfrac/error.hpp"

namespace mfrac::app {

struct Server::Impl {
  ServerOptions options;
  httplib::Server http;
  std::thread worker;
};

namespace {

void route(httplib::Server& http, const ServerOptions& opt) {
  const auto cors = [origin = opt.cors_origin](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Vary", "Origin");
  };
  const auto api = [&opt, cors](const httplib::Request& req, httplib::Response& res) {
    const auto r = handle_api(req.method, req.path, req.body, opt.api);
    res.status = r.status;
    char timing[64];
    std::snprintf(timing, sizeof timing, "app;dur=%.3f", r.elapsed_ms);
    res.set_header("Server-Timing", timing);
    cors(res);
    res.set_content(r.body, "application/json");
  };
  http.Get(R"(/api/.*)", api);
  http.Post(R"(/api/.*)", api);
  http.Options(R"(/api/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Max-Age", "600");
    res.status = 204;
  });
  http.set_payload_max_length(std::size_t{256} << 20);
  if (!opt.static_dir.empty() && std::filesystem::is_directory(opt.static_dir)) {
    http.set_mount_point("/", opt.static_dir.string());
  }
}

}  // namespace

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  route(impl_->http, impl_->options);
}

Server::~Server() { stop(); }

bool Server::run() {
  return impl_->http.listen(impl_->options.host, impl_->options.port);
}

int Server::start() {
  int port = impl_->options.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(impl_->options.host);
  } else if (!impl_->http.bind_to_port(impl_->options.host, port)) {
    port = -1;
  }
  if (port < 0) throw ResourceError("cannot bind " + impl_->options.host);
  impl_->worker = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return port;
}

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

std::filesystem::path default_static_dir() {
  if (const char* env = std::getenv("MFRAC_STATIC_DIR")) return env;
  return MFRAC_DEFAULT_STATIC_DIR;
}

}  // namespace mfrac::app
