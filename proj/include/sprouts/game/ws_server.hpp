#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/thread_pool.hpp>

#include "sprouts/game/service.hpp"

namespace sprouts::game {

class WsConnection;

// WebSocket transport for Service: one text frame per message. Messages of
// a connection are handled in order on a worker pool; writes are queued per
// connection.
class WsServer {
public:
  // Binds immediately; port 0 picks a free port. Throws on bind failure.
  WsServer(Service& service, const std::string& address, unsigned short port, unsigned workers = 2);
  ~WsServer();

  unsigned short port() const { return port_; }
  // Blocks until stop().
  void run();
  void stop();

private:
  friend class WsConnection;
  void accept();
  void send(const std::string& connection, std::string text);
  void opened(const std::string& id, const std::shared_ptr<WsConnection>& c);
  void closed(const std::string& id);

  Service& service_;
  boost::asio::io_context ioc_;
  boost::asio::ip::tcp::acceptor acceptor_;
  boost::asio::thread_pool pool_;
  unsigned short port_ = 0;
  std::mutex mu_;
  std::map<std::string, std::weak_ptr<WsConnection>> connections_;
  std::uint64_t next_id_ = 1;
};

}
