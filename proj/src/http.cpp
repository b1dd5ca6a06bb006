#include "eqproof/http.hpp"

#include <httplib.h>

namespace eqproof {

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(const ApiService& service) : impl_(std::make_unique<Impl>()) {
    auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        ApiService::Query query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        ApiResponse out = service.handle(req.method, req.path, query, req.body);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };
    const std::string any = R"(/api/.*)";
    impl_->server.Get(any, dispatch);
    impl_->server.Post(any, dispatch);
    impl_->server.Put(any, dispatch);
    impl_->server.Delete(any, dispatch);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace eqproof
