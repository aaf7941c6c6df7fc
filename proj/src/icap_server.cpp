#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <exception>
#include <optional>
#include <sstream>

#include "jsguard/gateway.hpp"
#include "jsguard/icap.hpp"
#include "jsguard/log.hpp"

namespace jsguard {

namespace {

constexpr const char* kServiceTag = "jsguard";

// Runs fn on a worker thread and waits at most `budget`. On timeout the
// worker is abandoned (it finishes on its own and its result is dropped);
// exceptions from fn are rethrown here.
template <typename Fn>
auto run_with_budget(Fn fn, std::chrono::milliseconds budget)
    -> std::optional<decltype(fn())> {
    using R = decltype(fn());
    struct State {
        std::mutex m;
        std::condition_variable cv;
        std::optional<R> result;
        std::exception_ptr error;
        bool done = false;
    };
    auto state = std::make_shared<State>();
    std::thread([state, fn = std::move(fn)]() mutable {
        std::optional<R> result;
        std::exception_ptr error;
        try {
            result = fn();
        } catch (...) {
            error = std::current_exception();
        }
        {
            std::lock_guard<std::mutex> lock(state->m);
            state->result = std::move(result);
            state->error = error;
            state->done = true;
        }
        state->cv.notify_all();
    }).detach();

    std::unique_lock<std::mutex> lock(state->m);
    if (!state->cv.wait_for(lock, budget, [&] { return state->done; })) return std::nullopt;
    if (state->error) std::rethrow_exception(state->error);
    return std::move(state->result);
}

bool send_all(int fd, std::string_view data) {
    size_t sent = 0;
    while (sent < data.size()) {
        ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        sent += static_cast<size_t>(n);
    }
    return true;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct RequestLine {
    std::string method;
    std::string uri;
    std::string version;
};

RequestLine split_request_line(const std::string& line) {
    std::istringstream in(line);
    RequestLine out;
    in >> out.method >> out.uri >> out.version;
    if (out.method.empty() || out.uri.empty() || out.version.empty())
        throw icap::ProtocolError("malformed request line: '" + line + "'");
    return out;
}

// The embedded HTTP request tells us what the client asked for; forward
// proxies use the absolute-URI form, origin form falls back to Host.
std::string base_url_from_req_hdr(const std::string& req_hdr) {
    if (req_hdr.empty()) return {};
    try {
        icap::Message msg = icap::parse_head(req_hdr);
        RequestLine line = split_request_line(msg.start_line);
        if (line.uri.find("://") != std::string::npos) return line.uri;
        if (auto host = icap::find_header(msg, "Host")) return "http://" + *host + line.uri;
    } catch (const icap::ProtocolError&) {
    }
    return {};
}

}  // namespace

IcapServer::IcapServer(GatewayConfig config, AnalysisOptions options,
                       std::shared_ptr<PoolStore> store)
    : config_(std::move(config)), options_(std::move(options)), store_(std::move(store)) {}

IcapServer::~IcapServer() { stop(); }

void IcapServer::start() {
    auto [host, port] = parse_listen_address(config_.listen_address);

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("socket(): " + std::string(strerror(errno)));

    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<uint16_t>(port));
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("listen_address host must be an IPv4 address: " + host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        const std::string err = strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("bind " + config_.listen_address + ": " + err);
    }
    if (::listen(listen_fd_, 64) != 0) {
        const std::string err = strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("listen(): " + err);
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);

    running_ = true;
    accept_thread_ = std::thread([this] { accept_loop(); });
    JSG_INFO("icap listening on " << host << ":" << port_);
}

void IcapServer::stop() {
    if (!running_.exchange(false)) {
        if (accept_thread_.joinable()) accept_thread_.join();
        return;
    }
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (accept_thread_.joinable()) accept_thread_.join();

    // Drain: connection loops notice running_ = false between transactions;
    // after a grace period any stragglers are cut at the socket.
    std::unique_lock<std::mutex> lock(mu_);
    if (!idle_cv_.wait_for(lock, std::chrono::seconds(5),
                           [&] { return active_connections_ == 0; })) {
        for (int fd : connection_fds_) ::shutdown(fd, SHUT_RDWR);
        idle_cv_.wait(lock, [&] { return active_connections_ == 0; });
    }
    JSG_INFO("icap stopped after " << transactions_.load() << " transactions");
}

void IcapServer::accept_loop() {
    while (running_) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        int ready = ::poll(&pfd, 1, 250);
        if (!running_) break;
        if (ready <= 0) continue;

        sockaddr_in peer{};
        socklen_t len = sizeof(peer);
        int fd = ::accept(listen_fd_, reinterpret_cast<sockaddr*>(&peer), &len);
        if (fd < 0) continue;

        char ip[INET_ADDRSTRLEN] = "?";
        ::inet_ntop(AF_INET, &peer.sin_addr, ip, sizeof(ip));
        std::string peer_text = std::string(ip) + ":" + std::to_string(ntohs(peer.sin_port));

        {
            std::lock_guard<std::mutex> lock(mu_);
            connection_fds_.insert(fd);
            ++active_connections_;
        }
        std::thread([this, fd, peer_text] {
            serve_connection(fd, peer_text);
            {
                std::lock_guard<std::mutex> lock(mu_);
                connection_fds_.erase(fd);
                --active_connections_;
                // Notify under the lock: stop() may destroy this condition
                // variable the moment the count reaches zero.
                idle_cv_.notify_all();
            }
            ::close(fd);
        }).detach();
    }
}

// Everything one transaction needs, shared between the connection loop and
// the handler.
class ConnectionState {
public:
    ConnectionState(int fd, std::string peer, const std::atomic<bool>& running)
        : fd(fd),
          peer(std::move(peer)),
          reader([this, &running](char* out, size_t max) -> long {
              while (true) {
                  pollfd pfd{this->fd, POLLIN, 0};
                  int ready = ::poll(&pfd, 1, 250);
                  if (ready < 0) {
                      if (errno == EINTR) continue;
                      return -1;
                  }
                  if (ready == 0) {
                      if (!running) return 0;  // drain: treat idle as EOF
                      continue;
                  }
                  ssize_t n = ::recv(this->fd, out, max, 0);
                  return static_cast<long>(n);
              }
          }) {}

    int fd;
    std::string peer;
    icap::BufferedReader reader;
};

void IcapServer::serve_connection(int fd, const std::string& peer) {
    ConnectionState conn(fd, peer, running_);
    try {
        while (handle_transaction(conn)) {
        }
    } catch (const icap::ProtocolError& e) {
        JSG_WARN("icap " << peer << ": protocol error: " << e.what());
        icap::Message err;
        err.start_line = "ICAP/1.0 400 Bad Request";
        err.headers = {{"ISTag", std::string("\"") + kServiceTag + "-g0\""},
                       {"Encapsulated", "null-body=0"},
                       {"Connection", "close"}};
        send_all(fd, icap::format_head(err));
    } catch (const std::exception& e) {
        JSG_ERROR("icap " << peer << ": " << e.what());
    }
}

bool IcapServer::handle_transaction(ConnectionState& conn) {
    std::string head_text;
    if (!conn.reader.read_head(head_text)) return false;  // clean EOF

    const auto started = std::chrono::steady_clock::now();
    icap::Message head = icap::parse_head(head_text);
    RequestLine request = split_request_line(head.start_line);

    auto snapshot = store_ ? store_->current() : nullptr;
    const std::string istag = std::string("\"") + kServiceTag + "-g" +
                              std::to_string(snapshot ? snapshot->generation : 0) + "\"";

    if (request.method == "OPTIONS") {
        icap::Message response;
        response.start_line = "ICAP/1.0 200 OK";
        response.headers = {{"Methods", "RESPMOD"},
                            {"Service", kServiceTag},
                            {"ISTag", istag},
                            {"Allow", "204"},
                            {"Preview", "0"},
                            {"Max-Connections", "100"},
                            {"Encapsulated", "null-body=0"}};
        ++transactions_;
        return send_all(conn.fd, icap::format_head(response));
    }

    if (request.method != "RESPMOD") {
        icap::Message response;
        response.start_line = "ICAP/1.0 405 Method Not Allowed";
        response.headers = {{"ISTag", istag}, {"Encapsulated", "null-body=0"}};
        ++transactions_;
        send_all(conn.fd, icap::format_head(response));
        return true;
    }

    const auto enc_value = icap::find_header(head, "Encapsulated");
    if (!enc_value) throw icap::ProtocolError("RESPMOD without Encapsulated header");
    const auto entries = icap::parse_encapsulated(*enc_value);

    std::string req_hdr;
    std::string res_hdr;
    bool has_body = false;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        if (entry.name == "req-hdr" || entry.name == "res-hdr") {
            const size_t size = entries[i + 1].offset - entry.offset;
            std::string block(size, '\0');
            if (!conn.reader.read_exact(block.data(), size))
                throw icap::ProtocolError("EOF inside encapsulated headers");
            (entry.name == "req-hdr" ? req_hdr : res_hdr) = std::move(block);
        } else if (entry.name == "res-body" || entry.name == "req-body") {
            has_body = true;
        }
    }

    std::string body;
    if (has_body) {
        icap::ChunkedBody first = icap::read_chunked(conn.reader);
        body = std::move(first.data);
        if (icap::find_header(head, "Preview") && !first.ieof) {
            // Preview flow: ask for the rest, then read the continuation.
            if (!send_all(conn.fd, "ICAP/1.0 100 Continue\r\n\r\n")) return false;
            icap::ChunkedBody rest = icap::read_chunked(conn.reader);
            body += rest.data;
        }
    }

    const bool allow_204 = [&] {
        auto allow = icap::find_header(head, "Allow");
        return allow && allow->find("204") != std::string::npos;
    }();

    auto respond_unmodified = [&]() -> bool {
        ++transactions_;
        if (allow_204) {
            icap::Message response;
            response.start_line = "ICAP/1.0 204 No Content";
            response.headers = {{"ISTag", istag}, {"Encapsulated", "null-body=0"}};
            return send_all(conn.fd, icap::format_head(response));
        }
        // Echo the original message verbatim.
        icap::Message response;
        response.start_line = "ICAP/1.0 200 OK";
        std::vector<icap::EncapsulatedEntry> out_entries;
        std::string payload;
        if (!res_hdr.empty()) {
            out_entries.push_back({"res-hdr", 0});
            payload = res_hdr;
        }
        out_entries.push_back({has_body ? "res-body" : "null-body", payload.size()});
        response.headers = {{"ISTag", istag},
                            {"Encapsulated", icap::format_encapsulated(out_entries)}};
        std::string wire = icap::format_head(response) + payload;
        if (has_body) wire += icap::chunk_encode(body);
        return send_all(conn.fd, wire);
    };

    auto respond_with = [&](const std::string& new_body, icap::Message http_head) -> bool {
        ++transactions_;
        // The body changed; the embedded head must agree.
        std::erase_if(http_head.headers, [](const auto& h) {
            std::string name = lower(h.first);
            return name == "content-length" || name == "transfer-encoding";
        });
        http_head.headers.emplace_back("Content-Length", std::to_string(new_body.size()));
        const std::string head_block = icap::format_head(http_head);

        icap::Message response;
        response.start_line = "ICAP/1.0 200 OK";
        response.headers = {
            {"ISTag", istag},
            {"Encapsulated",
             icap::format_encapsulated({{"res-hdr", 0}, {"res-body", head_block.size()}})}};
        return send_all(conn.fd, icap::format_head(response) + head_block +
                                     icap::chunk_encode(new_body));
    };

    // Only HTML responses with a body are analyzed.
    std::optional<icap::Message> http_head;
    if (!res_hdr.empty()) http_head = icap::parse_head(res_hdr);
    bool is_html = false;
    bool is_identity = true;
    if (http_head) {
        if (auto ct = icap::find_header(*http_head, "Content-Type"))
            is_html = lower(*ct).find("text/html") != std::string::npos;
        if (auto ce = icap::find_header(*http_head, "Content-Encoding")) {
            const std::string enc = lower(*ce);
            is_identity = enc.empty() || enc == "identity";
        }
    }

    if (!has_body || body.empty() || !is_html || !is_identity) {
        JSG_INFO("icap " << conn.peer << " RESPMOD pass (not analyzable html)");
        return respond_unmodified();
    }

    const std::string base_text = base_url_from_req_hdr(req_hdr);
    Url base;
    if (auto parsed = parse_url(base_text)) {
        base = *parsed;
    } else {
        base.scheme = "http";
        base.host = "localhost";
        base.port = 80;
        base.target = "/";
    }

    ContentMeta meta;
    meta.source_ip = "0.0.0.0";
    if (auto server_ip = icap::find_header(head, "X-Server-IP");
        server_ip && is_ipv4_literal(*server_ip)) {
        meta.source_ip = *server_ip;
    } else if (is_ipv4_literal(base.host)) {
        meta.source_ip = base.host;
    }
    meta.port = base.port;
    meta.protocol = base.scheme;
    meta.domain = base.host;
    meta.observed_at = std::time(nullptr);

    std::optional<AdaptationResult> result;
    std::string failure;
    if (snapshot) {
        try {
            const std::string html = body;
            const GatewayConfig config = config_;
            const AnalysisOptions options = options_;
            auto snap = snapshot;
            result = run_with_budget(
                [html, base, meta, config, snap, options] {
                    return adapt_html(html, base, meta, config, *snap, options);
                },
                std::chrono::milliseconds(config_.analyzer_budget_ms));
            if (!result) failure = "analyzer budget exceeded";
        } catch (const std::exception& e) {
            failure = e.what();
        }
    } else {
        failure = "no signature snapshot loaded";
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();

    if (!result) {
        if (config_.failure_mode == GatewayConfig::FailureMode::Open) {
            JSG_ERROR("icap " << conn.peer << " analyzer failure (" << failure
                              << "); failing open");
            return respond_unmodified();
        }
        JSG_ERROR("icap " << conn.peer << " analyzer failure (" << failure
                          << "); failing closed");
        icap::Message blocked;
        blocked.start_line = "HTTP/1.1 403 Forbidden";
        blocked.headers = {{"Content-Type", "text/html"}};
        return respond_with(
            "<html><body><h1>Content blocked</h1><p>The analyzer could not clear this "
            "page.</p></body></html>",
            std::move(blocked));
    }

    JSG_INFO("icap " << conn.peer << " RESPMOD"
                     << " action="
                     << (result->action == AdaptationResult::Action::Pass ? "pass"
                                                                          : "sanitize")
                     << " malicious=" << (result->verdict.malicious ? "yes" : "no")
                     << " signatures=" << result->verdict.matched_signatures.size()
                     << " obf=" << result->verdict.obfuscation_score
                     << " html5=" << result->verdict.html5_score << " ms=" << elapsed);

    if (result->action == AdaptationResult::Action::Pass) return respond_unmodified();
    return respond_with(result->html, *http_head);
}

}  // namespace jsguard
