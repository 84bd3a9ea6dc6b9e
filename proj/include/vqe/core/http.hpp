#pragma once

#include <string>

namespace vqe {

// POST a JSON body to an http:// endpoint and return the response body.
// Retries connection-level failures and 5xx up to `max_retries` extra
// attempts with linear backoff, then throws BackendUnreachable.
std::string http_post_json(const std::string& endpoint, const std::string& body, int timeout_ms,
                           int max_retries);

}  // namespace vqe
