#include "vqe/core/http.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

#include "vqe/core/error.hpp"

namespace vqe {

namespace {

struct ParsedUrl {
    std::string host_port;  // "host:port" as httplib::Client accepts
    std::string path;
};

ParsedUrl parse_http_url(const std::string& endpoint) {
    const std::string prefix = "http://";
    if (endpoint.rfind(prefix, 0) != 0) {
        throw Error(ErrorKind::InvalidConfig, "endpoint must be http://host:port[/path]: " + endpoint);
    }
    const std::string rest = endpoint.substr(prefix.size());
    const std::size_t slash = rest.find('/');
    ParsedUrl url;
    url.host_port = prefix + (slash == std::string::npos ? rest : rest.substr(0, slash));
    url.path = slash == std::string::npos ? "/" : rest.substr(slash);
    return url;
}

}  // namespace

std::string http_post_json(const std::string& endpoint, const std::string& body, int timeout_ms,
                           int max_retries) {
    const ParsedUrl url = parse_http_url(endpoint);
    std::string last_error = "no attempt made";

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
        }
        httplib::Client client(url.host_port);
        client.set_connection_timeout(0, timeout_ms * 1000);
        client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
        client.set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);

        auto res = client.Post(url.path, body, "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw Error(ErrorKind::BackendUnreachable,
                        endpoint + " answered status " + std::to_string(res->status));
        }
        return res->body;
    }
    throw Error(ErrorKind::BackendUnreachable, endpoint + ": " + last_error);
}

}  // namespace vqe
