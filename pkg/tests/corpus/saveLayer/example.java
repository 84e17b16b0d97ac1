public class FadeView {
    void draw(Canvas canvas, RectF bounds, Paint paint) {
        int count;
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.LOLLIPOP) {
            count = canvas.saveLayer(bounds, paint);
        } else {
            count = canvas.saveLayer(bounds, paint, Canvas.ALL_SAVE_FLAG);
        }
        canvas.restoreToCount(count);
    }
}
