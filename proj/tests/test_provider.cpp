#include <gtest/gtest.h>
#include <unistd.h>

#include <deque>
#include <thread>

#include "httplib.h"
#include "snowball/engine.hpp"
#include "snowball/ingest.hpp"
#include "snowball/provider.hpp"
#include "support.hpp"

namespace snowball {
namespace {

namespace fs = std::filesystem;

std::vector<ArticleId> ids_of(const std::vector<Article>& articles) {
  std::vector<ArticleId> out;
  for (const auto& a : articles) out.push_back(a.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::string body_for(const CitationGraph& g, const std::vector<ArticleId>& ids) {
  Json arr = Json::array();
  for (const auto& id : ids) arr.push_back(article_to_json(g.article(id)));
  return Json{{"articles", arr}}.dump();
}

// Serves G1 and can be told to fail the next few requests.
class FakeTransport : public HttpTransport {
 public:
  explicit FakeTransport(CitationGraph g) : graph_(std::move(g)) {}

  HttpResponse get(const std::string& path) override {
    std::lock_guard lock(mu_);
    paths.push_back(path);
    if (!script.empty()) {
      auto r = script.front();
      script.pop_front();
      return r;
    }
    const auto slash = path.find('/', 1);
    const std::string op = path.substr(1, slash - 1), id = path.substr(slash + 1);
    if (!graph_.contains(id)) return {404, ""};
    return {200, body_for(graph_, op == "references" ? graph_.references(id) : graph_.citations(id))};
  }

  std::deque<HttpResponse> script;
  std::vector<std::string> paths;

 private:
  std::mutex mu_;
  CitationGraph graph_;
};

class Provider : public ::testing::Test {
 protected:
  void SetUp() override {
    cache_ = fs::temp_directory_path() / ("snowball_provider_" + std::to_string(::getpid()) + "_" +
                                          ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(cache_);
  }
  void TearDown() override { fs::remove_all(cache_); }

  RemoteOptions options() {
    RemoteOptions o;
    o.cache_dir = cache_;
    o.max_requests_per_second = 0;
    o.sleep = [this](std::chrono::milliseconds d) { slept.push_back(d); };
    return o;
  }

  fs::path cache_;
  std::vector<std::chrono::milliseconds> slept;
};

TEST_F(Provider, FileProviderMatchesGraph) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto c = testing::random_case(seed, 30);
    FileProvider fp(c.graph);
    for (const Article* a : c.graph.articles()) {
      EXPECT_EQ(ids_of(fp.get_references(a->id)), c.graph.references(a->id));
      EXPECT_EQ(ids_of(fp.get_citations(a->id)), c.graph.citations(a->id));
    }
  }
  const auto g = testing::g1();
  FileProvider fp(g);
  EXPECT_EQ(ids_of(fp.get_citations("p2")), (std::vector<ArticleId>{"p1", "w"}));
}

TEST_F(Provider, SecondRequestIsServedFromCache) {
  auto t = std::make_unique<FakeTransport>(testing::g1());
  RemoteProvider remote(std::move(t), options());
  const auto first = remote.get_citations("p2");
  EXPECT_EQ(ids_of(first), (std::vector<ArticleId>{"p1", "w"}));
  EXPECT_EQ(remote.request_count(), 1);
  EXPECT_TRUE(fs::exists(remote.cache_path(ProviderOp::Citations, "p2")));
  EXPECT_EQ(remote.get_citations("p2"), first);
  EXPECT_EQ(remote.request_count(), 1);

  // A fresh provider over the same cache directory never touches the transport.
  RemoteProvider warm(std::make_unique<FakeTransport>(CitationGraph{}), options());
  EXPECT_EQ(warm.get_citations("p2"), first);
  EXPECT_EQ(warm.request_count(), 0);
}

TEST_F(Provider, RetriesTransientFailuresWithBackoff) {
  auto t = std::make_unique<FakeTransport>(testing::g1());
  t->script = {{503, ""}, {0, ""}, {429, ""}};
  RemoteProvider remote(std::move(t), options());
  EXPECT_EQ(ids_of(remote.get_references("q2")), (std::vector<ArticleId>{"q1", "r"}));
  EXPECT_EQ(remote.request_count(), 4);
  EXPECT_EQ(slept, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500),
                                                           std::chrono::milliseconds(1000),
                                                           std::chrono::milliseconds(2000)}));
}

TEST_F(Provider, GivesUpAfterMaxRetries) {
  auto t = std::make_unique<FakeTransport>(testing::g1());
  t->script = {{500, ""}, {500, ""}, {500, ""}, {500, ""}, {500, ""}};
  RemoteProvider remote(std::move(t), options());
  EXPECT_ERROR_KIND(remote.get_references("s"), ErrorKind::RemoteUnavailable);
  EXPECT_EQ(remote.request_count(), 4);
  EXPECT_FALSE(fs::exists(remote.cache_path(ProviderOp::References, "s")));
}

TEST_F(Provider, NotFoundIsNotRetried) {
  RemoteProvider remote(std::make_unique<FakeTransport>(testing::g1()), options());
  EXPECT_ERROR_KIND(remote.get_references("ghost"), ErrorKind::UnknownArticle);
  EXPECT_EQ(remote.request_count(), 1);
}

TEST_F(Provider, MalformedBodyLeavesCacheUntouched) {
  for (const char* body : {"not json", "{\"items\": []}", "{\"articles\": [{\"title\": \"no id\"}]}"}) {
    auto t = std::make_unique<FakeTransport>(testing::g1());
    t->script = {{200, body}};
    RemoteProvider remote(std::move(t), options());
    EXPECT_ERROR_KIND(remote.get_references("s"), ErrorKind::MalformedResponse);
    EXPECT_FALSE(fs::exists(remote.cache_path(ProviderOp::References, "s"))) << body;
  }
}

TEST_F(Provider, CachePathsAreKeyedByProviderOperationAndId) {
  RemoteProvider remote(std::make_unique<FakeTransport>(testing::g1()), options());
  EXPECT_EQ(remote.cache_path(ProviderOp::References, "a/b c"), cache_ / "remote" / "references" / "a%2Fb%20c.json");
  EXPECT_NE(remote.cache_path(ProviderOp::Citations, "x"), remote.cache_path(ProviderOp::References, "x"));
}

TEST_F(Provider, ConcurrentFetchesConvergeOnOneCachedValue) {
  RemoteOptions o = options();
  o.max_in_flight = 4;
  RemoteProvider remote(std::make_unique<FakeTransport>(testing::g1()), o);
  std::vector<std::thread> threads;
  std::vector<std::vector<Article>> results(8);
  for (int i = 0; i < 8; ++i) threads.emplace_back([&, i] { results[i] = remote.get_citations("p2"); });
  for (auto& th : threads) th.join();
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(cache_ / "remote" / "citations")) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
}

TEST_F(Provider, RateLimitSpacesRequests) {
  RemoteOptions o = options();
  o.max_requests_per_second = 10;
  o.cache_dir.clear();
  std::vector<std::chrono::milliseconds> waits;
  o.sleep = [&](std::chrono::milliseconds d) {
    waits.push_back(d);
    std::this_thread::sleep_for(d);
  };
  RemoteProvider remote(std::make_unique<FakeTransport>(testing::g1()), o);
  for (int i = 0; i < 3; ++i) remote.get_references("s");
  EXPECT_EQ(remote.request_count(), 3);
  ASSERT_GE(waits.size(), 1u);
  for (auto w : waits) EXPECT_LE(w.count(), 100);
}

TEST_F(Provider, RealHttpServerAndEngineAgree) {
  const auto g = testing::g1();
  httplib::Server server;
  int hits = 0;
  auto handler = [&](bool refs) {
    return [&, refs](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const std::string id = req.matches[1];
      if (!g.contains(id)) {
        res.status = 404;
        return;
      }
      res.set_content(body_for(g, refs ? g.references(id) : g.citations(id)), "application/json");
    };
  };
  server.Get(R"(/api/references/([^/]+))", handler(true));
  server.Get(R"(/api/citations/([^/]+))", handler(false));
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port) + "/api";
  auto run_remote = [&] {
    RemoteProvider remote(make_http_transport(base), options());
    ProviderSource source(remote, build_graph({g.article("s")}, {}));
    auto out = run_strategy(source, {"s"}, StrategyId::S1_BS_FS_FULL, testing::all_include(g), SearchConfig{});
    return std::make_pair(out.result.included, remote.request_count());
  };
  const auto [cold, cold_requests] = run_remote();
  const auto [warm, warm_requests] = run_remote();
  server.stop();
  th.join();

  const auto local = run_strategy(g, {"s"}, StrategyId::S1_BS_FS_FULL, testing::all_include(g), SearchConfig{});
  EXPECT_EQ(cold, local.result.included);
  EXPECT_EQ(warm, cold);
  EXPECT_GT(cold_requests, 0);
  EXPECT_EQ(warm_requests, 0);
  EXPECT_EQ(hits, cold_requests);
}

TEST_F(Provider, ConnectionFailureIsRemoteUnavailable) {
  RemoteOptions o = options();
  o.max_retries = 1;
  RemoteProvider remote(make_http_transport("http://127.0.0.1:1", std::chrono::milliseconds(200)), o);
  EXPECT_ERROR_KIND(remote.get_references("s"), ErrorKind::RemoteUnavailable);
  EXPECT_EQ(remote.request_count(), 2);
}

}  // namespace
}  // namespace snowball
