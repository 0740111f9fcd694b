#include "vsweep/error.hpp"
#include "vsweep/session.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <condition_variable>
#include <mutex>
#include <thread>

namespace vsweep {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

/// Newline-delimited messages over a raw TCP stream. Replies are written
/// before the next line is read, so frames leave in step order.
class LineConnection : public std::enable_shared_from_this<LineConnection> {
 public:
  LineConnection(tcp::socket socket, const ScenarioConfig& defaults)
      : socket_(std::move(socket)), session_(defaults) {}

  void start() { read(); }

 private:
  void read() {
    asio::async_read_until(socket_, buffer_, '\n', [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      std::istream is(&self->buffer_);
      std::string line;
      std::getline(is, line);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) return self->read();
      self->pending_.clear();
      for (const std::string& reply : self->session_.handle(line)) self->pending_ += reply + '\n';
      self->write();
    });
  }

  void write() {
    asio::async_write(socket_, asio::buffer(pending_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (!ec) self->read();
    });
  }

  tcp::socket socket_;
  asio::streambuf buffer_;
  std::string pending_;
  Session session_;
};

/// One JSON message per WebSocket text frame.
class WebSocketConnection : public std::enable_shared_from_this<WebSocketConnection> {
 public:
  WebSocketConnection(tcp::socket socket, const ScenarioConfig& defaults)
      : ws_(std::move(socket)), session_(defaults) {}

  void start() {
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->read();
    });
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      const std::string line = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->replies_ = self->session_.handle(line);
      self->next_ = 0;
      self->write();
    });
  }

  void write() {
    if (next_ == replies_.size()) return read();
    ws_.text(true);
    ws_.async_write(asio::buffer(replies_[next_]), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      ++self->next_;
      self->write();
    });
  }

  websocket::stream<tcp::socket> ws_;
  beast::flat_buffer buffer_;
  std::vector<std::string> replies_;
  std::size_t next_{0};
  Session session_;
};

}  // namespace

struct SessionServer::Impl {
  Impl(Transport t, const std::string& host, std::uint16_t port, ScenarioConfig d)
      : transport(t), defaults(std::move(d)), acceptor(io) {
    beast::error_code ec;
    const auto address = asio::ip::make_address(host, ec);
    if (ec) throw Error(ErrorCode::kInvalidArgument, "bad listen address '" + host + "'");
    const tcp::endpoint endpoint(address, port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" + std::to_string(port) + ": " + ec.message());
    bound_port = acceptor.local_endpoint().port();
    accept();
    worker = std::thread([this] {
      io.run();
      std::lock_guard lock(mutex);
      finished = true;
      done.notify_all();
    });
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      if (transport == Transport::kTcp) {
        std::make_shared<LineConnection>(std::move(socket), defaults)->start();
      } else {
        std::make_shared<WebSocketConnection>(std::move(socket), defaults)->start();
      }
      accept();
    });
  }

  Transport transport;
  ScenarioConfig defaults;
  asio::io_context io;
  tcp::acceptor acceptor;
  std::uint16_t bound_port{0};
  std::thread worker;
  std::mutex mutex;
  std::condition_variable done;
  bool finished{false};
};

SessionServer::SessionServer(Transport transport, const std::string& host, std::uint16_t port,
                             ScenarioConfig defaults)
    : impl_(std::make_unique<Impl>(transport, host, port, std::move(defaults))) {}

SessionServer::~SessionServer() {
  stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

std::uint16_t SessionServer::port() const noexcept { return impl_->bound_port; }

void SessionServer::wait() {
  std::unique_lock lock(impl_->mutex);
  impl_->done.wait(lock, [this] { return impl_->finished; });
}

void SessionServer::stop() { impl_->io.stop(); }

}  // namespace vsweep
