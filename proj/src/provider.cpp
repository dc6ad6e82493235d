#include "snowball/provider.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "snowball/error.hpp"
#include "snowball/ingest.hpp"

namespace snowball {

namespace fs = std::filesystem;

std::string_view to_string(ProviderOp op) { return op == ProviderOp::References ? "references" : "citations"; }

namespace {

std::string percent_encode(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::vector<Article> to_articles(const CitationGraph& g, const std::vector<ArticleId>& ids) {
  std::vector<Article> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(g.article(id));
  return out;
}

class HttplibTransport final : public HttpTransport {
 public:
  HttplibTransport(const std::string& base_url, std::chrono::milliseconds timeout) {
    // Split "scheme://host:port/prefix" into the client origin and a path prefix.
    const auto scheme_end = base_url.find("://");
    const auto path_start = base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = path_start == std::string::npos ? base_url : base_url.substr(0, path_start);
    if (path_start != std::string::npos) prefix_ = base_url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    client_ = std::make_unique<httplib::Client>(origin);
    const auto secs = static_cast<time_t>(timeout.count() / 1000);
    const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
    client_->set_connection_timeout(secs, usecs);
    client_->set_read_timeout(secs, usecs);
  }

  HttpResponse get(const std::string& path) override {
    std::lock_guard lock(mu_);
    auto res = client_->Get(prefix_ + path);
    if (!res) return {};
    return {res->status, res->body};
  }

 private:
  std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
  std::string prefix_;
};

bool transient(int status) { return status == 0 || status == 429 || status >= 500; }

// Writes body to a temp file and hard-links it into place; the link fails if
// the target exists, so the first writer wins and the file is never torn.
void write_once(const fs::path& target, const std::string& body) {
  fs::create_directories(target.parent_path());
  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << "." << counter++;
  const fs::path tmp = target.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw Error(ErrorKind::Io, "cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  fs::create_hard_link(tmp, target, ec);
  fs::remove(tmp);
  if (ec && !fs::exists(target)) throw Error(ErrorKind::Io, "cannot publish cache file " + target.string());
}

}  // namespace

std::vector<Article> FileProvider::get_references(const ArticleId& id) {
  return to_articles(graph_, graph_.out_edges(id));
}

std::vector<Article> FileProvider::get_citations(const ArticleId& id) {
  return to_articles(graph_, graph_.in_edges(id));
}

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url, std::chrono::milliseconds timeout) {
  return std::make_unique<HttplibTransport>(base_url, timeout);
}

std::vector<Article> parse_provider_response(std::string_view body) {
  Json j;
  try {
    j = Json::parse(body.begin(), body.end());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  }
  if (!j.is_object() || !j.contains("articles") || !j["articles"].is_array()) {
    throw Error(ErrorKind::MalformedResponse, "expected an object with an 'articles' array");
  }
  std::vector<Article> out;
  try {
    for (const auto& a : j["articles"]) out.push_back(article_from_json(a, false, nullptr));
    // Reuse the corpus checks (non-empty id, year range, no duplicates).
    build_graph(out, {});
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  }
  return out;
}

RemoteProvider::RemoteProvider(std::unique_ptr<HttpTransport> transport, RemoteOptions options)
    : transport_(std::move(transport)),
      options_(std::move(options)),
      in_flight_(std::clamp(options_.max_in_flight, 1, 64)) {
  if (!options_.sleep) options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::vector<Article> RemoteProvider::get_references(const ArticleId& id) { return fetch(ProviderOp::References, id); }

std::vector<Article> RemoteProvider::get_citations(const ArticleId& id) { return fetch(ProviderOp::Citations, id); }

fs::path RemoteProvider::cache_path(ProviderOp op, const ArticleId& id) const {
  return options_.cache_dir / options_.provider_name / std::string(to_string(op)) / (percent_encode(id) + ".json");
}

void RemoteProvider::throttle() {
  if (options_.max_requests_per_second <= 0) return;
  const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / options_.max_requests_per_second));
  std::chrono::steady_clock::duration wait{0};
  {
    std::lock_guard lock(rate_mu_);
    const auto now = std::chrono::steady_clock::now();
    if (next_slot_ > now) {
      wait = next_slot_ - now;
      next_slot_ += interval;
    } else {
      next_slot_ = now + interval;
    }
  }
  if (wait.count() > 0) options_.sleep(std::chrono::ceil<std::chrono::milliseconds>(wait));
}

std::vector<Article> RemoteProvider::fetch(ProviderOp op, const ArticleId& id) {
  const bool caching = !options_.cache_dir.empty();
  const fs::path cached = caching ? cache_path(op, id) : fs::path{};
  if (caching && fs::exists(cached)) return parse_provider_response(read_text_file(cached));

  struct Slot {
    std::counting_semaphore<64>& s;
    explicit Slot(std::counting_semaphore<64>& sem) : s(sem) { s.acquire(); }
    ~Slot() { s.release(); }
  } slot(in_flight_);

  const std::string path = "/" + std::string(to_string(op)) + "/" + percent_encode(id);
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) options_.sleep(options_.initial_backoff * (1 << (attempt - 1)));
    throttle();
    ++requests_;
    const HttpResponse res = transport_->get(path);
    if (res.status == 200) {
      auto articles = parse_provider_response(res.body);
      if (!caching) return articles;
      write_once(cached, res.body);
      // Concurrent fetches converge on whichever body was published first.
      return parse_provider_response(read_text_file(cached));
    }
    if (res.status == 404) throw Error(ErrorKind::UnknownArticle, "remote has no '" + id + "'");
    last_failure = res.status == 0 ? "connection failed" : "HTTP " + std::to_string(res.status);
    if (!transient(res.status)) break;
  }
  throw Error(ErrorKind::RemoteUnavailable, std::string(to_string(op)) + " of '" + id + "': " + last_failure);
}

ProviderSource::ProviderSource(CitationProvider& provider, const CitationGraph& known) : provider_(provider) {
  for (const Article* a : known.articles()) articles_.emplace(a->id, std::make_unique<Article>(*a));
}

const Article* ProviderSource::find(std::string_view id) const {
  std::lock_guard lock(mu_);
  auto it = articles_.find(id);
  return it == articles_.end() ? nullptr : it->second.get();
}

std::vector<ArticleId> ProviderSource::absorb(std::vector<Article> articles) const {
  std::vector<ArticleId> ids;
  std::lock_guard lock(mu_);
  for (auto& a : articles) {
    ids.push_back(a.id);
    if (!articles_.contains(a.id)) {
      const ArticleId key = a.id;
      articles_.emplace(key, std::make_unique<Article>(std::move(a)));
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<ArticleId> ProviderSource::references(const ArticleId& id) const {
  return absorb(provider_.get_references(id));
}

std::vector<ArticleId> ProviderSource::citations(const ArticleId& id) const {
  return absorb(provider_.get_citations(id));
}

}  // namespace snowball
