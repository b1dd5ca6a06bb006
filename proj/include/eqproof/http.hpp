#pragma once

#include <memory>
#include <string>

#include "eqproof/api.hpp"

namespace eqproof {

/// Minimal HTTP front end for ApiService.
class HttpServer {
public:
    explicit HttpServer(const ApiService& service);
    ~HttpServer();

    /// Binds to host:port; port 0 picks a free port. Returns the bound port,
    /// or -1 on failure.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool listen();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace eqproof
