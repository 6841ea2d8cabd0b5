#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "cam/repo/source.hpp"
#include "cam/util/text.hpp"

namespace cam::repo {

HttpTransport::HttpTransport(std::string base_url, std::string token)
    : base_url_(std::move(base_url)), token_(std::move(token)) {}

HttpResponse HttpTransport::get(const std::string& target) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(30);
  client.set_read_timeout(60);
  client.set_follow_location(true);
  httplib::Headers headers = {{"Accept", "application/vnd.github+json"}, {"User-Agent", "cam-dataset-builder"}};
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  auto res = client.Get(target, headers);
  if (!res) throw NetworkError("request failed: " + httplib::to_string(res.error()));
  HttpResponse out;
  out.status = res->status;
  out.body = res->body;
  for (const auto& [k, v] : res->headers) out.headers[util::to_lower(k)] = v;
  return out;
}

}  // namespace cam::repo
