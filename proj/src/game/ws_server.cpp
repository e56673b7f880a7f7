#include "sprouts/game/ws_server.hpp"

#include <deque>

#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace sprouts::game {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

class WsConnection : public std::enable_shared_from_this<WsConnection> {
public:
  WsConnection(WsServer& server, tcp::socket socket, std::string id)
      : server_(server), ws_(std::move(socket)), work_(asio::make_strand(server.pool_)), id_(std::move(id)) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.read_message_max(1 << 20);
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return self->server_.closed(self->id_);
      self->server_.opened(self->id_, self);
      self->read();
    });
  }

  void send(std::string text) {
    asio::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)]() mutable {
      self->queue_.push_back(std::move(text));
      if (self->queue_.size() == 1) self->write();
    });
  }

private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->server_.closed(self->id_);
      std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      asio::post(self->work_, [self, text = std::move(text)] {
        for (auto& out : self->server_.service_.handle(self->id_, text))
          self->server_.send(out.connection, out.message.dump());
      });
      self->read();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->server_.closed(self->id_);
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->write();
    });
  }

  WsServer& server_;
  websocket::stream<beast::tcp_stream> ws_;
  asio::strand<asio::thread_pool::executor_type> work_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  std::string id_;
};

WsServer::WsServer(Service& service, const std::string& address, unsigned short port, unsigned workers)
    : service_(service), acceptor_(ioc_), pool_(workers) {
  tcp::endpoint endpoint(asio::ip::make_address(address), port);
  acceptor_.open(endpoint.protocol());
  acceptor_.set_option(asio::socket_base::reuse_address(true));
  acceptor_.bind(endpoint);
  acceptor_.listen();
  port_ = acceptor_.local_endpoint().port();
  accept();
}

WsServer::~WsServer() {
  stop();
  pool_.join();
}

void WsServer::run() {
  auto guard = asio::make_work_guard(ioc_);
  ioc_.run();
}

void WsServer::stop() {
  asio::post(ioc_, [this] {
    beast::error_code ec;
    acceptor_.close(ec);
    ioc_.stop();
  });
}

void WsServer::accept() {
  acceptor_.async_accept(asio::make_strand(ioc_), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;
    std::string id;
    {
      std::lock_guard lock(mu_);
      id = "c" + std::to_string(next_id_++);
    }
    std::make_shared<WsConnection>(*this, std::move(socket), id)->start();
    accept();
  });
}

void WsServer::opened(const std::string& id, const std::shared_ptr<WsConnection>& c) {
  std::lock_guard lock(mu_);
  connections_[id] = c;
}

void WsServer::closed(const std::string& id) {
  {
    std::lock_guard lock(mu_);
    connections_.erase(id);
  }
  asio::post(pool_, [this, id] { service_.disconnect(id); });
}

void WsServer::send(const std::string& connection, std::string text) {
  std::shared_ptr<WsConnection> c;
  {
    std::lock_guard lock(mu_);
    auto it = connections_.find(connection);
    if (it != connections_.end()) c = it->second.lock();
  }
  if (c) c->send(std::move(text));
}

}
