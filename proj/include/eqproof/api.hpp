#pragma once

#include <map>
#include <string>
#include <string_view>

#include "eqproof/io.hpp"
#include "eqproof/session.hpp"

namespace eqproof {

struct ApiResponse {
    int status = 200;
    Json body;
};

struct ServiceConfig {
    bool generation_enabled = false;
    std::size_t max_generate_steps = 20;
    std::size_t max_generate_count = 50;
};

/// Transport-independent request handler. Holds no per-client state; all
/// session data lives in the tutor's store.
class ApiService {
public:
    using Query = std::map<std::string, std::string>;

    ApiService(Tutor& tutor, ServiceConfig cfg = {});

    ApiResponse handle(std::string_view method, std::string_view path, const Query& query,
                       std::string_view body) const;

    static ApiResponse error(int status, std::string_view code, std::string_view message, Json detail = nullptr);

private:
    ApiResponse create_session() const;
    ApiResponse rules() const;
    ApiResponse questions(const Query& query) const;
    ApiResponse parse_expression(const Json& body) const;
    ApiResponse step(const std::string& qid, const Json& body) const;
    ApiResponse hint(const std::string& qid, const Json& body) const;
    ApiResponse solution(const std::string& qid, const Query& query) const;
    ApiResponse reset(const std::string& qid, const Json& body) const;
    ApiResponse progress(const Query& query) const;
    ApiResponse generate(const Json& body) const;

    Tutor& tutor_;
    ServiceConfig cfg_;
};

}  // namespace eqproof
