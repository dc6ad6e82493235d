#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "snowball/corpus.hpp"

namespace snowball {

enum class ProviderOp { References, Citations };

std::string_view to_string(ProviderOp op);

// Where citation lists come from: a loaded corpus or a remote service.
class CitationProvider {
 public:
  virtual ~CitationProvider() = default;

  virtual std::string name() const = 0;
  virtual std::vector<Article> get_references(const ArticleId& id) = 0;
  virtual std::vector<Article> get_citations(const ArticleId& id) = 0;
};

class FileProvider final : public CitationProvider {
 public:
  explicit FileProvider(const CitationGraph& graph) : graph_(graph) {}

  std::string name() const override { return "file"; }
  std::vector<Article> get_references(const ArticleId& id) override;
  std::vector<Article> get_citations(const ArticleId& id) override;

 private:
  const CitationGraph& graph_;
};

struct HttpResponse {
  int status = 0;  // 0: no response (connection failure)
  std::string body;
};

// Minimal GET transport so the remote provider can be exercised without a network.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& path) = 0;
};

// cpp-httplib client against "http://host:port[/prefix]".
std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url,
                                                   std::chrono::milliseconds timeout = std::chrono::seconds(10));

struct RemoteOptions {
  std::string provider_name = "remote";
  double max_requests_per_second = 3.0;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  int max_in_flight = 4;
  std::filesystem::path cache_dir;  // empty disables the cache
  // Injected for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Speaks GET <base>/references/<id> and GET <base>/citations/<id>, each
// answering {"articles": [Article, ...]}. Successful bodies are cached
// write-once under <cache_dir>/<provider>/<operation>/<id>.json and cache
// hits never touch the transport.
class RemoteProvider final : public CitationProvider {
 public:
  RemoteProvider(std::unique_ptr<HttpTransport> transport, RemoteOptions options);

  std::string name() const override { return options_.provider_name; }
  std::vector<Article> get_references(const ArticleId& id) override;
  std::vector<Article> get_citations(const ArticleId& id) override;

  // Requests actually sent to the transport, retries included.
  long request_count() const { return requests_.load(); }
  std::filesystem::path cache_path(ProviderOp op, const ArticleId& id) const;

 private:
  std::vector<Article> fetch(ProviderOp op, const ArticleId& id);
  void throttle();

  std::unique_ptr<HttpTransport> transport_;
  RemoteOptions options_;
  std::atomic<long> requests_{0};
  std::mutex rate_mu_;
  std::chrono::steady_clock::time_point next_slot_{};
  std::counting_semaphore<64> in_flight_;
};

// Parses and validates a provider response body. Throws MalformedResponse.
std::vector<Article> parse_provider_response(std::string_view body);

// CitationSource over a provider: neighbourhoods are fetched on demand and
// the returned article records fill in metadata for filtering.
class ProviderSource final : public CitationSource {
 public:
  ProviderSource(CitationProvider& provider, const CitationGraph& known);

  const Article* find(std::string_view id) const override;
  std::vector<ArticleId> references(const ArticleId& id) const override;
  std::vector<ArticleId> citations(const ArticleId& id) const override;

 private:
  std::vector<ArticleId> absorb(std::vector<Article> articles) const;

  CitationProvider& provider_;
  mutable std::mutex mu_;
  mutable std::map<ArticleId, std::unique_ptr<Article>, std::less<>> articles_;
};

}  // namespace snowball
