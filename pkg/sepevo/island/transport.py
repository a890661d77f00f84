# sepevo/island/transport.py

import queue
from abc import ABC, abstractmethod
from typing import List

from sepevo.island.protocol import Message


class Mailbox(ABC):
    """Unbounded inbox of one island; senders never block."""

    @abstractmethod
    def put(self, message: Message) -> None:
        ...

    @abstractmethod
    def drain(self) -> List[Message]:
        ...


class QueueMailbox(Mailbox):
    def __init__(self):
        self._queue: "queue.SimpleQueue[Message]" = queue.SimpleQueue()

    def put(self, message: Message) -> None:
        self._queue.put(message)

    def drain(self) -> List[Message]:
        messages = []
        while True:
            try:
                messages.append(self._queue.get_nowait())
            except queue.Empty:
                return messages


class Network:
    """One mailbox per island; the only channel between islands."""

    def __init__(self, p: int):
        self.mailboxes: List[Mailbox] = [QueueMailbox() for _ in range(p)]

    def deliver(self, target: int, message: Message) -> None:
        self.mailboxes[target].put(message)

    def inbox(self, pe_id: int) -> Mailbox:
        return self.mailboxes[pe_id]
