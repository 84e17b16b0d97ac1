public class Reminder {
    void show(TimePicker start, TimePicker end) {
        int from = start.getCurrentMinute();
        log(end.getCurrentMinute() - from);
    }
}
