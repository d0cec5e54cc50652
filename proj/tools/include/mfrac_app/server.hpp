#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "mfrac_app/api.hpp"

namespace mfrac::app {

inline constexpr int kDefaultPort = 8787;

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 picks a free port
  std::filesystem::path static_dir;
  std::string cors_origin = "*";
  ApiOptions api;
};

/// HTTP front end: /api/* goes to handle_api, everything else to static_dir.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and serves until stop(); returns false when the port is unavailable.
  bool run();
  /// Binds, serves on a background thread and returns the bound port.
  int start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Built-in location of the explorer bundle.
std::filesystem::path default_static_dir();

}  // namespace mfrac::app
